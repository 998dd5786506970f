use std::sync::Arc;

use proptest::prelude::*;
use pseudoalg::catalog::{self, BasisChange, Catalog};
use pseudoalg::solver::{residual, EquationId, Label};
use pseudoalg::verify::{sample_t2, sample_uel};
use pseudoalg::{
    check_axiom, defect, Axiom, Direction, LieAlgebra, LiftMode, ModuleElement, Perm, PseudoEl2, PseudoEl3, ProductTable, T2,
    UEl,
};

fn algebra(i: usize) -> Arc<LieAlgebra> {
    LieAlgebra::presets()[i % 4].clone()
}

fn arb_case() -> impl Strategy<Value = (Arc<LieAlgebra>, u64)> {
    (0usize..4, any::<u64>()).prop_map(|(i, seed)| (algebra(i), seed))
}

fn apply_antipode_left(t: &T2) -> UEl {
    let alg = t.algebra();
    t.terms().iter().fold(UEl::zero(alg), |acc, ([a, b], c)| {
        let x = UEl::monomial(alg, a.clone(), c.clone()).antipode();
        let y = UEl::monomial(alg, b.clone(), pseudoalg::rational::int(1));
        acc.try_add(&x.try_mul(&y).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_coassociative((alg, seed) in arb_case()) {
        let a = sample_uel(&alg, seed, 3);
        let d = a.coproduct();
        prop_assert_eq!(d.lift(LiftMode::CoproductLeft), d.lift(LiftMode::CoproductRight));
        prop_assert_eq!(d.lift(LiftMode::CoproductLeft), a.coproduct2());
    }

    #[test]
    fn coproduct_is_cocommutative_and_multiplicative((alg, seed) in arb_case()) {
        let a = sample_uel(&alg, seed, 2);
        let b = sample_uel(&alg, seed.wrapping_add(1), 2);
        prop_assert_eq!(a.coproduct().flip(), a.coproduct());
        prop_assert_eq!(a.try_mul(&b).unwrap().coproduct(), a.coproduct().try_mul(&b.coproduct()).unwrap());
    }

    #[test]
    fn antipode_identity((alg, seed) in arb_case()) {
        let a = sample_uel(&alg, seed, 3);
        prop_assert_eq!(apply_antipode_left(&a.coproduct()), UEl::scalar(&alg, a.counit()));
        prop_assert_eq!(a.antipode().antipode(), a.clone());
    }

    #[test]
    fn fourier_round_trip((alg, seed) in arb_case()) {
        let b = sample_t2(&alg, seed, 2);
        prop_assert_eq!(b.fourier(Direction::Forward).fourier(Direction::Inverse), b.clone());
        prop_assert_eq!(b.fourier(Direction::Inverse).fourier(Direction::Forward), b);
    }

    #[test]
    fn galois_form_is_unique((alg, seed) in arb_case()) {
        let b = sample_t2(&alg, seed, 2);
        let g = b.galois_decompose();
        prop_assert_eq!(g.expand(), b);
        prop_assert_eq!(g.expand().galois_decompose(), g);
    }

    #[test]
    fn lifts_are_injective((alg, seed) in arb_case()) {
        let a = sample_t2(&alg, seed, 2);
        let b = sample_t2(&alg, seed ^ 0xabcd, 2);
        for mode in [LiftMode::CoproductLeft, LiftMode::CoproductRight, LiftMode::PadLeft, LiftMode::PadRight] {
            prop_assert_eq!(a.lift(mode) == b.lift(mode), a == b);
        }
    }

    #[test]
    fn normal_form_ignores_representative((alg, seed) in arb_case()) {
        let beta = sample_t2(&alg, seed, 2);
        let h = sample_uel(&alg, seed.wrapping_mul(3), 2);
        let x = ModuleElement::new(vec![sample_uel(&alg, seed ^ 1, 1), sample_uel(&alg, seed ^ 2, 1)]).unwrap();
        let moved = PseudoEl2::normalize(&alg, 2, &[(beta.try_mul(&h.coproduct()).unwrap(), x.clone())]).unwrap();
        let direct = PseudoEl2::normalize(&alg, 2, &[(beta, x.act(&h).unwrap())]).unwrap();
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn left_prelie_defect_is_antisymmetric((alg, seed) in arb_case()) {
        let table = ProductTable::rank_one(sample_t2(&alg, seed, 1));
        let e = ModuleElement::basis(&alg, 1, 0);
        let x = e.act(&sample_uel(&alg, seed ^ 5, 1)).unwrap();
        let y = e.act(&sample_uel(&alg, seed ^ 6, 1)).unwrap();
        let d = defect(&x, &y, &e, &table, Axiom::LeftPreLie).unwrap();
        let swapped = defect(&y, &x, &e, &table, Axiom::LeftPreLie).unwrap().permute(Perm::Swap12).unwrap();
        let negated = PseudoEl3::zero(&alg, 1).try_sub(&swapped).unwrap();
        prop_assert_eq!(d, negated);
    }

    #[test]
    fn rank_one_residuals_match_axioms((alg, seed) in arb_case()) {
        let alpha = sample_t2(&alg, seed, 1);
        let table = ProductTable::rank_one(alpha.clone());
        for (label, ax) in [(Label::Eq2_1, Axiom::LeftPreLie), (Label::Eq2_2, Axiom::RightPreLie), (Label::Eq4_1, Axiom::Assoc)] {
            let zero = residual(&EquationId::bare(label), &alpha).unwrap().is_zero();
            prop_assert_eq!(zero, check_axiom(&table, ax).unwrap().passed());
        }
    }

    #[test]
    fn associative_types_are_prelie(pick in 0usize..64, seed in any::<u64>()) {
        let cat = Catalog::builtin();
        let assoc: Vec<_> = cat.entries().iter().filter(|e| e.axioms.contains(&Axiom::Assoc)).collect();
        let entry = assoc[pick % assoc.len()];
        let alg = algebra(seed as usize);
        let params = catalog::satisfying_params(entry, &alg, 4).unwrap();
        let p = &params[(seed as usize / 4) % params.len()];
        let t = catalog::instantiate(entry, &alg, p).unwrap().table;
        prop_assert!(check_axiom(&t, Axiom::Assoc).unwrap().passed());
        prop_assert!(check_axiom(&t, Axiom::LeftPreLie).unwrap().passed());
        prop_assert!(check_axiom(&t, Axiom::RightPreLie).unwrap().passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn unit_triangular_change_preserves_prelie(pick in 0usize..64, seed in any::<u64>(), upper in any::<bool>()) {
        let cat = Catalog::builtin();
        let rank_two: Vec<_> = cat
            .entries()
            .iter()
            .filter(|e| e.rank == 2 && e.axioms == [Axiom::LeftPreLie])
            .collect();
        let entry = rank_two[pick % rank_two.len()];
        let alg = LieAlgebra::abelian(2);
        let params = catalog::satisfying_params(entry, &alg, 1).unwrap();
        let t = catalog::instantiate(entry, &alg, &params[0]).unwrap().table;
        let h = sample_uel(&alg, seed, 1);
        let (one, zero) = (UEl::one(&alg), UEl::zero(&alg));
        let p = if upper {
            vec![vec![one.clone(), h], vec![zero, one]]
        } else {
            vec![vec![one.clone(), zero], vec![h, one]]
        };
        let b = BasisChange::new(&alg, p).unwrap();
        let moved = catalog::transform(&t, &b).unwrap();
        prop_assert!(check_axiom(&moved, Axiom::LeftPreLie).unwrap().passed(), "{} under {:?}", entry.id, b.p());
    }
}
