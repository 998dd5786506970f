//! Residuals of the rank-one and auxiliary equations, and exact nullspaces of
//! the linear ones at bounded degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{DeltaVector, LieAlgebra};
use crate::pseudo::{check_axiom, Axiom, ProductTable};
use crate::rational::{abs_lcm_denominators, int, Rational};
use crate::tensor::{LiftMode, Perm, TensorJson, T2, T3};
use crate::uea::{MultiIndex, UEl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eq2_1,
    Eq2_2,
    Eq3_1,
    Eq3_2,
    Eq3_7,
    Eq3_8,
    Eq3_9,
    Eq3_10,
    Eq4_1,
}

impl Label {
    pub const ALL: [Label; 9] = [
        Label::Eq2_1,
        Label::Eq2_2,
        Label::Eq3_1,
        Label::Eq3_2,
        Label::Eq3_7,
        Label::Eq3_8,
        Label::Eq3_9,
        Label::Eq3_10,
        Label::Eq4_1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Label::Eq2_1 => "eq2.1",
            Label::Eq2_2 => "eq2.2",
            Label::Eq3_1 => "eq3.1",
            Label::Eq3_2 => "eq3.2",
            Label::Eq3_7 => "eq3.7",
            Label::Eq3_8 => "eq3.8",
            Label::Eq3_9 => "eq3.9",
            Label::Eq3_10 => "eq3.10",
            Label::Eq4_1 => "eq4.1",
        }
    }

    /// Names of the fixed data the equation needs.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            Label::Eq2_1 | Label::Eq2_2 | Label::Eq3_1 | Label::Eq4_1 => &[],
            Label::Eq3_2 | Label::Eq3_7 | Label::Eq3_8 | Label::Eq3_10 => &["s", "t"],
            Label::Eq3_9 => &["s", "t", "l", "k"],
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Label::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EquationParams {
    pub s: Option<DeltaVector>,
    pub t: Option<Rational>,
    pub l: Option<Rational>,
    pub k: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquationId {
    pub label: Label,
    pub params: EquationParams,
}

impl EquationId {
    pub fn new(label: Label, params: EquationParams) -> Self {
        EquationId { label, params }
    }

    pub fn bare(label: Label) -> Self {
        EquationId { label, params: EquationParams::default() }
    }

    fn scalar(&self, name: &str) -> Result<Rational> {
        let v = match name {
            "t" => &self.params.t,
            "l" => &self.params.l,
            "k" => &self.params.k,
            _ => unreachable!("not a scalar slot"),
        };
        v.clone().ok_or_else(|| Error::MissingParam(name.to_string()))
    }

    fn delta(&self, alg: &Arc<LieAlgebra>) -> Result<UEl> {
        let s = self.params.s.as_ref().ok_or_else(|| Error::MissingParam("s".to_string()))?;
        UEl::from_delta(alg, s)
    }
}

/// Residual of an equation; zero iff the equation holds.
#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    T2(T2),
    T3(T3),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::T2(t) => t.is_zero(),
            Residual::T3(t) => t.is_zero(),
        }
    }

    pub fn to_json(&self) -> TensorJson {
        match self {
            Residual::T2(t) => t.to_json(),
            Residual::T3(t) => t.to_json(),
        }
    }

    fn entries(&self) -> Vec<(Vec<MultiIndex>, Rational)> {
        match self {
            Residual::T2(t) => t.terms().iter().map(|(k, c)| (k.to_vec(), c.clone())).collect(),
            Residual::T3(t) => t.terms().iter().map(|(k, c)| (k.to_vec(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::T2(t) => write!(f, "{t}"),
            Residual::T3(t) => write!(f, "{t}"),
        }
    }
}

/// `(α⊗1)(Δ⊗id)α − (1⊗α)(id⊗Δ)α`
pub fn associator(alpha: &T2) -> Result<T3> {
    let l = alpha.lift(LiftMode::PadRight).try_mul(&alpha.lift(LiftMode::CoproductLeft))?;
    let r = inner_right(alpha, alpha)?;
    Ok(&l - &r)
}

/// `(1⊗a)(id⊗Δ)b`
fn inner_right(a: &T2, b: &T2) -> Result<T3> {
    a.lift(LiftMode::PadLeft).try_mul(&b.lift(LiftMode::CoproductRight))
}

fn antisym12(x: &T3) -> T3 {
    x - &x.swap12()
}

/// `1⊗s⊗1 + l·s⊗1⊗1 + k`
fn left_factor(alg: &Arc<LieAlgebra>, s: &UEl, l: &Rational, k: &Rational) -> T3 {
    let one = UEl::one(alg);
    let mid = T3::pure([&one, s, &one]);
    let first = T3::pure([s, &one, &one]).scale(l);
    &(&mid + &first) + &T3::scalar(alg, k.clone())
}

/// `1⊗s + l·s⊗1 + k`
fn right_form(alg: &Arc<LieAlgebra>, s: &UEl, l: &Rational, k: &Rational) -> T2 {
    &(&T2::right(s) + &T2::left(s).scale(l)) + &T2::scalar(alg, k.clone())
}

/// Extracts `g` from `α = 1 ⊗ g`.
fn right_slot(alpha: &T2) -> Result<UEl> {
    let alg = alpha.algebra();
    let unit = MultiIndex::zero(alg.dim());
    let mut terms = Vec::new();
    for ([a, b], c) in alpha.terms() {
        if *a != unit {
            return Err(Error::Malformed("eq3.10 expects an unknown of the form 1⊗g".into()));
        }
        terms.push((b.clone(), c.clone()));
    }
    Ok(UEl::from_terms(alg, terms))
}

/// Left side minus right side of the equation at `alpha`.
pub fn residual(id: &EquationId, alpha: &T2) -> Result<Residual> {
    let alg = alpha.algebra().clone();
    let zero = Rational::zero();
    Ok(match id.label {
        Label::Eq2_1 => {
            let l = associator(alpha)?;
            Residual::T3(antisym12(&l))
        }
        Label::Eq2_2 => {
            let l = associator(alpha)?;
            Residual::T3(&l - &l.swap(Perm::Swap23)?)
        }
        Label::Eq3_1 => Residual::T3(antisym12(&inner_right(alpha, alpha)?)),
        Label::Eq3_2 => {
            let (s, t) = (id.delta(&alg)?, id.scalar("t")?);
            let p = &left_factor(&alg, &s, &zero, &t).try_mul(&alpha.lift(LiftMode::CoproductLeft))?
                - &inner_right(alpha, alpha)?;
            Residual::T3(antisym12(&p))
        }
        Label::Eq3_7 => {
            let (s, t) = (id.delta(&alg)?, id.scalar("t")?);
            let one = UEl::one(&alg);
            let f = &T3::pure([&one, &one, &s]) + &T3::scalar(&alg, t);
            let l = alpha.lift(LiftMode::PadRight).try_mul(&alpha.lift(LiftMode::CoproductLeft))?;
            Residual::T3(&l - &f.try_mul(&alpha.lift(LiftMode::CoproductRight))?)
        }
        Label::Eq3_8 => {
            let (s, t) = (id.delta(&alg)?, id.scalar("t")?);
            let q = &left_factor(&alg, &s, &zero, &t).try_mul(&alpha.lift(LiftMode::CoproductLeft))?
                - &inner_right(alpha, &right_form(&alg, &s, &zero, &t))?;
            Residual::T3(antisym12(&q))
        }
        Label::Eq3_9 => {
            let (s, t) = (id.delta(&alg)?, id.scalar("t")?);
            let (l, k) = (id.scalar("l")?, id.scalar("k")?);
            let one = UEl::one(&alg);
            let f = &T3::pure([&one, &one, &s]) + &T3::scalar(&alg, t);
            let lhs = &alpha.lift(LiftMode::PadRight).try_mul(&alpha.lift(LiftMode::CoproductLeft))?
                - &f.try_mul(&alpha.lift(LiftMode::CoproductRight))?;
            let inner = &left_factor(&alg, &s, &l, &k).try_mul(&alpha.lift(LiftMode::CoproductLeft))?
                - &inner_right(alpha, &right_form(&alg, &s, &l, &k))?;
            Residual::T3(&lhs - &inner.swap12())
        }
        Label::Eq3_10 => {
            let (s, t) = (id.delta(&alg)?, id.scalar("t")?);
            let g = right_slot(alpha)?;
            let gg = T2::pure([&g, &g]);
            let f = &T2::right(&s) + &T2::scalar(&alg, t);
            let rhs = &f.try_mul(&g.coproduct())? - &T2::right(&g.try_mul(&s)?);
            Residual::T2(&gg - &rhs)
        }
        Label::Eq4_1 => Residual::T3(associator(alpha)?),
    })
}

/// Every `(I, J)` with `|I| + |J| ≤ degree`, in key order.
pub fn unknown_basis(alg: &Arc<LieAlgebra>, degree: usize) -> Vec<[MultiIndex; 2]> {
    let n = alg.dim();
    let mut all = Vec::new();
    let mut cur = vec![0u32; 2 * n];
    fn rec(pos: usize, left: usize, cur: &mut Vec<u32>, n: usize, out: &mut Vec<[MultiIndex; 2]>) {
        if pos == cur.len() {
            out.push([MultiIndex::new(cur[..n].to_vec()), MultiIndex::new(cur[n..].to_vec())]);
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u32;
            rec(pos + 1, left - e, cur, n, out);
        }
        cur[pos] = 0;
    }
    rec(0, degree, &mut cur, n, &mut all);
    all.sort();
    all
}

/// Linear map from coefficients on [`unknown_basis`] to residual coefficients.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub unknowns: Vec<[MultiIndex; 2]>,
    pub rows: Vec<(usize, Vec<MultiIndex>)>,
    pub matrix: Vec<Vec<Rational>>,
    pub degree: usize,
}

fn basis_tensor(alg: &Arc<LieAlgebra>, key: &[MultiIndex; 2]) -> T2 {
    T2::from_terms(alg, [(key.clone(), Rational::one())])
}

fn random_t2(alg: &Arc<LieAlgebra>, rng: &mut ChaCha8Rng, basis: &[[MultiIndex; 2]]) -> T2 {
    let mut terms = Vec::new();
    for k in basis {
        if rng.gen_bool(0.5) {
            terms.push((k.clone(), int(rng.gen_range(-3..=3))));
        }
    }
    T2::from_terms(alg, terms)
}

fn stack(rs: &[Residual]) -> BTreeMap<(usize, Vec<MultiIndex>), Rational> {
    let mut out = BTreeMap::new();
    for (b, r) in rs.iter().enumerate() {
        for (k, c) in r.entries() {
            out.insert((b, k), c);
        }
    }
    out
}

fn all_zero(rs: &[Residual]) -> bool {
    rs.iter().all(Residual::is_zero)
}

fn combine(a: &[Residual], b: &[Residual], sign: i64) -> Vec<Residual> {
    let c = int(sign);
    a.iter()
        .zip(b)
        .map(|(x, y)| match (x, y) {
            (Residual::T2(x), Residual::T2(y)) => Residual::T2(x + &y.scale(&c)),
            (Residual::T3(x), Residual::T3(y)) => Residual::T3(x + &y.scale(&c)),
            _ => unreachable!("residual shapes are fixed per equation"),
        })
        .collect()
}

/// Assembles the system for an arbitrary residual map, after checking that the
/// map is linear and vanishes at zero.
pub fn assemble<F>(alg: &Arc<LieAlgebra>, name: &str, degree: i64, f: F) -> Result<LinearSystem>
where
    F: Fn(&T2) -> Result<Vec<Residual>> + Sync,
{
    if degree < 0 {
        return Err(Error::EmptyBasisDomain(degree));
    }
    let degree = degree as usize;
    let at_zero = f(&T2::zero(alg))?;
    if !all_zero(&at_zero) {
        return Err(Error::Inhomogeneous(name.to_string()));
    }
    let probe_basis = unknown_basis(alg, degree.max(2));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..3 {
        let a = random_t2(alg, &mut rng, &probe_basis);
        let b = random_t2(alg, &mut rng, &probe_basis);
        let c = int(rng.gen_range(2..=5));
        let (fa, fb) = (f(&a)?, f(&b)?);
        let additive = combine(&combine(&f(&(&a + &b))?, &fa, -1), &fb, -1);
        let scaled = f(&a.scale(&c))?;
        let homogeneous = combine(&scaled, &fa.iter().map(|r| scale_residual(r, &c)).collect::<Vec<_>>(), -1);
        if !all_zero(&additive) || !all_zero(&homogeneous) {
            return Err(Error::NotLinear(name.to_string()));
        }
    }
    let unknowns = unknown_basis(alg, degree);
    let columns: Vec<BTreeMap<(usize, Vec<MultiIndex>), Rational>> = unknowns
        .par_iter()
        .map(|k| f(&basis_tensor(alg, k)).map(|r| stack(&r)))
        .collect::<Result<_>>()?;
    let mut row_keys: Vec<(usize, Vec<MultiIndex>)> = columns.iter().flat_map(|c| c.keys().cloned()).collect();
    row_keys.sort();
    row_keys.dedup();
    let matrix = row_keys
        .iter()
        .map(|rk| columns.iter().map(|c| c.get(rk).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    Ok(LinearSystem { unknowns, rows: row_keys, matrix, degree })
}

fn scale_residual(r: &Residual, c: &Rational) -> Residual {
    match r {
        Residual::T2(t) => Residual::T2(t.scale(c)),
        Residual::T3(t) => Residual::T3(t.scale(c)),
    }
}

/// The system for a labelled equation over `alg`.
pub fn linear_system(id: &EquationId, alg: &Arc<LieAlgebra>, degree: i64) -> Result<LinearSystem> {
    if id.label == Label::Eq3_10 {
        // the unknown is g in α = 1 ⊗ g; restrict the domain accordingly
        return assemble(alg, id.label.name(), degree, |a| {
            let unit = MultiIndex::zero(alg.dim());
            let g_part = T2::from_terms(alg, a.terms().iter().filter(|(k, _)| k[0] == unit).map(|(k, c)| (k.clone(), c.clone())));
            Ok(vec![residual(id, &g_part)?])
        });
    }
    assemble(alg, id.label.name(), degree, |a| Ok(vec![residual(id, a)?]))
}

impl LinearSystem {
    /// Basis of the kernel, one vector per free column of the reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let n = self.unknowns.len();
        let rref = reduced_echelon(&self.matrix, n);
        let pivots: Vec<usize> = rref
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).expect("echelon rows are nonzero"))
            .collect();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); n];
                v[free] = Rational::one();
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -row[free].clone();
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        reduced_echelon(&self.matrix, self.unknowns.len()).len()
    }

    pub fn to_t2(&self, alg: &Arc<LieAlgebra>, v: &[Rational]) -> T2 {
        T2::from_terms(alg, self.unknowns.iter().cloned().zip(v.iter().cloned()))
    }
}

/// Fraction-free elimination followed by back substitution; returns the
/// nonzero rows of the reduced echelon form.
fn reduced_echelon(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = abs_lcm_denominators(row);
            row.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division is exact");
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].abs();
        if a[r][c].is_negative() {
            prev = -prev;
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut q: Vec<Vec<Rational>> = a[..r]
        .iter()
        .map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    for (i, &c) in pivots.iter().enumerate().rev() {
        let p = q[i][c].clone();
        for x in q[i].iter_mut() {
            *x = &*x / &p;
        }
        for k in 0..i {
            let f = q[k][c].clone();
            if f.is_zero() {
                continue;
            }
            let (head, tail) = q.split_at_mut(i);
            for (x, y) in head[k].iter_mut().zip(&tail[0]) {
                *x -= &f * y;
            }
        }
    }
    q
}

/// Exact basis of `{α : residual(α) = 0, deg α ≤ degree}`.
pub fn linear_nullspace(id: &EquationId, alg: &Arc<LieAlgebra>, degree: i64) -> Result<Vec<T2>> {
    let sys = linear_system(id, alg, degree)?;
    Ok(sys.nullspace().iter().map(|v| sys.to_t2(alg, v)).collect())
}

/// Linear slice of an axiom: all coefficients of `table` fixed except
/// `α^k_{ij}`, which is the unknown.
pub fn axiom_slice_nullspace(
    table: &ProductTable,
    slot: (usize, usize, usize),
    axiom: Axiom,
    degree: i64,
) -> Result<Vec<T2>> {
    let alg = table.algebra().clone();
    let (i, j, k) = slot;
    let n = table.rank();
    if i >= n || j >= n || k >= n {
        return Err(Error::RankMismatch { expected: n, found: i.max(j).max(k) + 1 });
    }
    let name = format!("{axiom} slice at ({}, {}, {})", i + 1, j + 1, k + 1);
    let sys = assemble(&alg, &name, degree, |a| {
        let mut t = table.clone();
        t.set(i, j, k, a.clone())?;
        let report = check_axiom(&t, axiom)?;
        let mut out = Vec::new();
        for f in report.failures {
            for c in 0..n {
                let comp = f.defect.component(c);
                let mut keyed = T3::zero(&alg);
                for (key, v) in comp.terms() {
                    keyed.add_term(key.clone(), v.clone());
                }
                out.push((f.triple, c, keyed));
            }
        }
        // fixed block layout so that residuals of different unknowns align
        let mut blocks = vec![T3::zero(&alg); n * n * n * n];
        for (tr, c, r) in out {
            blocks[((tr[0] * n + tr[1]) * n + tr[2]) * n + c] = r;
        }
        Ok(blocks.into_iter().map(Residual::T3).collect())
    })?;
    Ok(sys.nullspace().iter().map(|v| sys.to_t2(&alg, v)).collect())
}

/// JSON form of a nullspace computation.
#[derive(Debug, Clone, Serialize)]
pub struct NullspaceReport {
    pub equation: String,
    pub degree: i64,
    pub dimension: usize,
    pub basis: Vec<TensorJson>,
}

impl NullspaceReport {
    pub fn new(equation: &str, degree: i64, basis: &[T2]) -> Self {
        NullspaceReport {
            equation: equation.to_string(),
            degree,
            dimension: basis.len(),
            basis: basis.iter().map(T2::to_json).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn d(alg: &Arc<LieAlgebra>, e: &[u32]) -> UEl {
        UEl::monomial(alg, MultiIndex::new(e.to_vec()), Rational::one())
    }

    fn with_st(label: Label, s: &[i64], t: i64) -> EquationId {
        EquationId::new(label, EquationParams { s: Some(DeltaVector::from_ints(s)), t: Some(int(t)), ..Default::default() })
    }

    #[test]
    fn prop_family_solves_left_equation() {
        let alg = LieAlgebra::abelian(1);
        let alpha = &T2::right(&d(&alg, &[1])) + &T2::scalar(&alg, int(3));
        assert!(residual(&EquationId::bare(Label::Eq2_1), &alpha).unwrap().is_zero());
        let bad = T2::right(&d(&alg, &[2]));
        assert!(!residual(&EquationId::bare(Label::Eq2_1), &bad).unwrap().is_zero());
    }

    #[test]
    fn known_family_solves_linear_equation() {
        let alg = LieAlgebra::abelian(1);
        let id = with_st(Label::Eq3_8, &[1], 5);
        assert!(residual(&id, &T2::right(&d(&alg, &[2]))).unwrap().is_zero());
        assert!(!residual(&id, &T2::left(&d(&alg, &[1]))).unwrap().is_zero());
    }

    #[test]
    fn missing_and_unknown() {
        let alg = LieAlgebra::abelian(1);
        let id = EquationId::bare(Label::Eq3_8);
        assert_eq!(residual(&id, &T2::one(&alg)).unwrap_err(), Error::MissingParam("s".into()));
        assert_eq!("eq9.9".parse::<Label>().unwrap_err(), Error::UnknownLabel("eq9.9".into()));
    }

    #[test]
    fn nullspace_of_linear_equation() {
        let alg = LieAlgebra::abelian(1);
        let id = with_st(Label::Eq3_8, &[1], 1);
        let basis = linear_nullspace(&id, &alg, 3).unwrap();
        let expected: Vec<T2> = (0..4).map(|j| T2::right(&d(&alg, &[j]))).collect();
        assert_eq!(basis, expected);
        assert_eq!(linear_nullspace(&id, &alg, 0).unwrap(), vec![T2::one(&alg)]);
        assert_eq!(linear_nullspace(&id, &alg, -1).unwrap_err(), Error::EmptyBasisDomain(-1));
    }

    #[test]
    fn quadratic_equation_is_rejected() {
        let alg = LieAlgebra::abelian(1);
        let err = linear_nullspace(&EquationId::bare(Label::Eq2_1), &alg, 2).unwrap_err();
        assert_eq!(err, Error::NotLinear("eq2.1".into()));
    }

    #[test]
    fn reduced_form_of_small_system() {
        let m = vec![vec![int(2), int(4), int(6)], vec![int(1), int(2), int(4)]];
        let r = reduced_echelon(&m, 3);
        assert_eq!(r, vec![vec![int(1), int(2), int(0)], vec![int(0), int(0), int(1)]]);
        let m = vec![vec![frac(1, 2), frac(1, 3)], vec![int(3), int(2)]];
        assert_eq!(reduced_echelon(&m, 2).len(), 1);
    }

    #[test]
    fn reduced_scalar_equation() {
        let alg = LieAlgebra::abelian(2);
        let id = with_st(Label::Eq3_10, &[1, 0], 2);
        let s = d(&alg, &[1, 0]);
        for g in [UEl::zero(&alg), UEl::scalar(&alg, int(2)), &s + &UEl::scalar(&alg, int(2))] {
            assert!(residual(&id, &T2::right(&g)).unwrap().is_zero(), "{g}");
        }
        assert!(!residual(&id, &T2::right(&s)).unwrap().is_zero());
        assert!(residual(&id, &T2::left(&s)).is_err());
    }
}
