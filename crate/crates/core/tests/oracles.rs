//! Hand-computed values.

use pseudoalg::catalog::{self, Catalog, ParamValue, Params};
use pseudoalg::rational::{frac, int};
use pseudoalg::solver::{linear_nullspace, EquationId, EquationParams, Label};
use pseudoalg::{check_axiom, Axiom, DeltaVector, LieAlgebra, MultiIndex, ProductTable, UEl, T2};

fn mono(alg: &std::sync::Arc<LieAlgebra>, e: &[u32]) -> UEl {
    UEl::monomial(alg, MultiIndex::new(e.to_vec()), int(1))
}

#[test]
fn divided_powers_multiply_by_binomials() {
    let alg = LieAlgebra::abelian(1);
    // ∂ · ∂²/2 = 3 · ∂³/6
    assert_eq!(mono(&alg, &[1]).try_mul(&mono(&alg, &[2])).unwrap(), mono(&alg, &[3]).scale(&int(3)));
    let d2 = mono(&alg, &[2]);
    assert_eq!(d2.try_mul(&d2).unwrap(), mono(&alg, &[4]).scale(&int(6)));
}

#[test]
fn divided_power_coproduct_has_unit_coefficients() {
    let alg = LieAlgebra::abelian(1);
    let expected = (0..=3u32).fold(T2::zero(&alg), |acc, i| &acc + &T2::pure([&mono(&alg, &[i]), &mono(&alg, &[3 - i])]));
    assert_eq!(mono(&alg, &[3]).coproduct(), expected);
}

#[test]
fn antipode_alternates_sign() {
    let alg = LieAlgebra::abelian(1);
    for n in 0..5u32 {
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(mono(&alg, &[n]).antipode(), mono(&alg, &[n]).scale(&sign));
    }
}

#[test]
fn sl2_straightening() {
    let alg = LieAlgebra::sl2();
    // x1 x0 = x0 x1 - [x0, x1] with [x0, x1] = 2 x1
    let lhs = mono(&alg, &[0, 1, 0]).try_mul(&mono(&alg, &[1, 0, 0])).unwrap();
    let rhs = mono(&alg, &[1, 1, 0]).try_add(&mono(&alg, &[0, 1, 0]).scale(&int(-2))).unwrap();
    assert_eq!(lhs, rhs);
    // x2 x1 = x1 x2 - [x1, x2] with [x1, x2] = x0
    let lhs = mono(&alg, &[0, 0, 1]).try_mul(&mono(&alg, &[0, 1, 0])).unwrap();
    let rhs = mono(&alg, &[0, 1, 1]).try_add(&mono(&alg, &[1, 0, 0]).scale(&int(-1))).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn rank_one_sides() {
    let alg = LieAlgebra::abelian(1);
    let d = mono(&alg, &[1]);
    let right = ProductTable::rank_one(T2::right(&d));
    let left = ProductTable::rank_one(T2::left(&d));
    assert!(check_axiom(&right, Axiom::LeftPreLie).unwrap().passed());
    assert!(!check_axiom(&right, Axiom::RightPreLie).unwrap().passed());
    assert!(!check_axiom(&right, Axiom::Assoc).unwrap().passed());
    assert!(check_axiom(&left, Axiom::RightPreLie).unwrap().passed());
    assert!(!check_axiom(&left, Axiom::LeftPreLie).unwrap().passed());
    let scalar = ProductTable::rank_one(T2::scalar(&alg, frac(-3, 2)));
    for ax in Axiom::ALL {
        assert!(check_axiom(&scalar, ax).unwrap().passed());
    }
}

#[test]
fn bounded_nullspace_dimension() {
    let alg = LieAlgebra::abelian(1);
    let id = EquationId::new(
        Label::Eq3_8,
        EquationParams { s: Some(DeltaVector(vec![int(1)])), t: Some(int(1)), l: None, k: None },
    );
    let basis = linear_nullspace(&id, &alg, 3).unwrap();
    assert_eq!(basis.len(), 4);
    assert_eq!(basis[3], T2::right(&mono(&alg, &[3])));
}

#[test]
fn reduced_type_is_a_current_algebra() {
    let alg = LieAlgebra::abelian(2);
    // e2 ∘ e1 = e1, e2 ∘ e2 = e2
    let zero = int(0);
    let mut m = vec![vec![vec![zero; 2]; 2]; 2];
    m[1][0][0] = int(1);
    m[1][1][1] = int(1);
    let cur = catalog::current(&alg, &m).unwrap();
    let entry = catalog::instantiate_id("cor3.12/ii", &alg, &Params::new()).unwrap();
    assert_eq!(cur, entry.table);
}

#[test]
fn basis_change_reaches_reduced_type() {
    let alg = LieAlgebra::abelian(2);
    let params = Params::from([("t1".to_string(), ParamValue::Scalar(int(1))), ("t2".to_string(), ParamValue::Scalar(int(2)))]);
    let src = catalog::instantiate_id("thm3.11/2", &alg, &params).unwrap().table;
    let half = frac(1, 2);
    let p = vec![
        vec![UEl::scalar(&alg, int(-1)), UEl::scalar(&alg, half.clone())],
        vec![UEl::zero(&alg), UEl::scalar(&alg, half)],
    ];
    let b = catalog::BasisChange::new(&alg, p).unwrap();
    let out = catalog::transform(&src, &b).unwrap();
    let target = catalog::instantiate_id("cor3.12/ii", &alg, &Params::new()).unwrap().table;
    assert!(catalog::equivalent(&out, &target).unwrap());
}

#[test]
fn catalog_type_counts() {
    let cat = Catalog::builtin();
    let count = |g: &str| cat.group(g).count();
    assert_eq!(count("thm3.6"), 11);
    assert_eq!(count("thm3.8"), 3);
    assert_eq!(count("thm3.11"), 8);
    assert_eq!(count("thm3.13"), 4);
    assert_eq!(count("thm3.15"), 4);
    assert_eq!(count("thm3.17"), 3);
    assert_eq!(count("thm3.19"), 5);
    assert_eq!(count("cor3.12"), 4);
    assert_eq!(count("thm4.2"), 1);
    assert_eq!(count("thm4.3"), 4);
    assert_eq!(count("thm4.4"), 5);
    assert_eq!(count("cor4.5"), 3);
}
