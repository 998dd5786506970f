//! Exact arithmetic in `H = U(δ)`.
//!
//! Elements are stored in the divided-power PBW basis
//! `∂^(I) = ∂_1^{i_1} ⋯ ∂_N^{i_N} / (i_1! ⋯ i_N!)`, so that
//! `Δ(∂^(I)) = Σ_{J+K=I} ∂^(J) ⊗ ∂^(K)` has unit coefficients.
//!
//! Products are straightened with `∂_j ∂_i = ∂_i ∂_j - [∂_i, ∂_j]` for `j > i`.
//! The recursion works in the ordinary (non-divided) PBW basis and is memoised
//! per Lie algebra; conversion to divided powers happens at the end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{same_ambient, DeltaVector, LieAlgebra};
use crate::rational::{factorial, Rational, RationalJson};
use crate::tensor::{T2, T3, Tensor};

/// Straightening steps allowed for a single monomial product.
pub const STEP_CAP: usize = 1_000_000;

/// Exponent vector `I = (i_1, …, i_N)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|I|`.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn bumped(&self, i: usize, by: i32) -> Self {
        let mut v = self.0.clone();
        v[i] = (v[i] as i32 + by) as u32;
        MultiIndex(v)
    }

    fn last_generator(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// `I!` = `i_1! ⋯ i_N!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// All ordered `K`-tuples `(A_1, …, A_K)` with `A_1 + … + A_K = self`.
    pub fn compositions<const K: usize>(&self) -> Vec<[MultiIndex; K]> {
        let n = self.len();
        let mut out: Vec<Vec<Vec<u32>>> = vec![vec![Vec::with_capacity(n); K]];
        for &e in &self.0 {
            let mut next = Vec::new();
            for partial in &out {
                for_each_composition(e, K, &mut |parts| {
                    let mut p = partial.clone();
                    for (slot, &v) in p.iter_mut().zip(parts) {
                        slot.push(v);
                    }
                    next.push(p);
                });
            }
            out = next;
        }
        out.into_iter()
            .map(|p| {
                let mut it = p.into_iter().map(MultiIndex);
                std::array::from_fn(|_| it.next().expect("K parts"))
            })
            .collect()
    }

    /// Generator word in PBW order, e.g. `(2,0,1)` -> `[0,0,2]`.
    pub fn word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }
}

fn for_each_composition(total: u32, parts: usize, f: &mut dyn FnMut(&[u32])) {
    fn rec(rem: u32, slots: usize, acc: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if slots == 1 {
            acc.push(rem);
            f(acc);
            acc.pop();
            return;
        }
        for v in 0..=rem {
            acc.push(v);
            rec(rem - v, slots - 1, acc, f);
            acc.pop();
        }
    }
    rec(total, parts, &mut Vec::with_capacity(parts), f);
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

type Terms = Vec<(MultiIndex, Rational)>;

/// Memo tables for straightening, owned by each [`LieAlgebra`].
#[derive(Default)]
pub(crate) struct StraighteningCache {
    // ordinary PBW word times a single generator
    word_gen: RwLock<HashMap<(MultiIndex, usize), Arc<Terms>>>,
    // divided-power monomial products
    mono: RwLock<HashMap<(MultiIndex, MultiIndex), Arc<Terms>>>,
    antipode: RwLock<HashMap<MultiIndex, Arc<Terms>>>,
}

fn cached<K: std::hash::Hash + Eq + Clone>(
    table: &RwLock<HashMap<K, Arc<Terms>>>,
    key: &K,
    compute: impl FnOnce() -> Terms,
) -> Arc<Terms> {
    if let Some(v) = table.read().expect("cache lock").get(key) {
        return v.clone();
    }
    let v = Arc::new(compute());
    table.write().expect("cache lock").insert(key.clone(), v.clone());
    v
}

/// `∂^I · ∂_j` in the ordinary PBW basis.
fn word_times_generator(alg: &LieAlgebra, word: &MultiIndex, j: usize, steps: &mut usize) -> Arc<Terms> {
    match word.last_generator() {
        None => return Arc::new(vec![(MultiIndex::unit(alg.dim(), j), Rational::one())]),
        Some(k) if k <= j => return Arc::new(vec![(word.bumped(j, 1), Rational::one())]),
        Some(_) => {}
    }
    let key = (word.clone(), j);
    if let Some(v) = alg.cache.word_gen.read().expect("cache lock").get(&key) {
        return v.clone();
    }
    *steps += 1;
    assert!(
        *steps <= STEP_CAP,
        "internal error: PBW straightening exceeded {STEP_CAP} steps"
    );
    let k = word.last_generator().expect("nonempty word");
    let prefix = word.bumped(k, -1);
    let mut acc: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
    // ∂^{I'} ∂_k ∂_j = (∂^{I'} ∂_j) ∂_k + ∂^{I'} [∂_k, ∂_j]
    for (m, c) in word_times_generator(alg, &prefix, j, steps).iter() {
        for (m2, c2) in word_times_generator(alg, m, k, steps).iter() {
            add_term(&mut acc, m2.clone(), c * c2);
        }
    }
    for (g, b) in alg.basis_bracket(k, j) {
        for (m, c) in word_times_generator(alg, &prefix, *g, steps).iter() {
            add_term(&mut acc, m.clone(), b * c);
        }
    }
    let v = Arc::new(acc.into_iter().collect::<Terms>());
    alg.cache.word_gen.write().expect("cache lock").insert(key, v.clone());
    v
}

fn add_term(acc: &mut BTreeMap<MultiIndex, Rational>, k: MultiIndex, v: Rational) {
    if v.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `∂^(I) · ∂^(J)` in the divided-power basis.
pub(crate) fn monomial_product(alg: &LieAlgebra, a: &MultiIndex, b: &MultiIndex) -> Arc<Terms> {
    if b.is_zero() {
        return Arc::new(vec![(a.clone(), Rational::one())]);
    }
    if a.is_zero() {
        return Arc::new(vec![(b.clone(), Rational::one())]);
    }
    cached(&alg.cache.mono, &(a.clone(), b.clone()), || {
        let ordered_already = a.last_generator().zip(b.0.iter().position(|&e| e > 0)).is_none_or(|(l, f)| l <= f);
        if alg.is_abelian() || ordered_already {
            // ∂^(I) ∂^(J) = binom(I+J, I) ∂^(I+J)
            let sum = a.plus(b);
            let c = Rational::new(sum.factorial(), a.factorial() * b.factorial());
            return vec![(sum, c)];
        }
        let mut steps = 0usize;
        let mut acc: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        acc.insert(a.clone(), Rational::one());
        for g in b.word() {
            let mut next = BTreeMap::new();
            for (m, c) in &acc {
                for (m2, c2) in word_times_generator(alg, m, g, &mut steps).iter() {
                    add_term(&mut next, m2.clone(), c * c2);
                }
            }
            acc = next;
        }
        let denom = a.factorial() * b.factorial();
        acc.into_iter()
            .map(|(k, c)| {
                let scale = Rational::new(k.factorial(), denom.clone());
                (k, c * scale)
            })
            .collect()
    })
}

/// `S(∂^(I))` in the divided-power basis.
pub(crate) fn monomial_antipode(alg: &Arc<LieAlgebra>, a: &MultiIndex) -> Arc<Terms> {
    if a.is_zero() {
        return Arc::new(vec![(a.clone(), Rational::one())]);
    }
    cached(&alg.cache.antipode, a, || {
        // reversed word, each generator negated, divided by I!
        let n = alg.dim();
        let mut acc = UEl::one(alg);
        for g in a.word().into_iter().rev() {
            acc = &acc * &UEl::monomial(alg, MultiIndex::unit(n, g), -Rational::one());
        }
        let scale = Rational::new(BigInt::one(), a.factorial());
        acc.scale(&scale).terms.into_iter().collect()
    })
}

/// An element of `U(δ)` in the divided-power PBW basis.
#[derive(Clone)]
pub struct UEl {
    alg: Arc<LieAlgebra>,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl UEl {
    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        UEl { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<LieAlgebra>) -> Self {
        Self::scalar(alg, Rational::one())
    }

    pub fn scalar(alg: &Arc<LieAlgebra>, c: Rational) -> Self {
        Self::monomial(alg, MultiIndex::zero(alg.dim()), c)
    }

    /// `c · ∂^(I)`.
    pub fn monomial(alg: &Arc<LieAlgebra>, index: MultiIndex, c: Rational) -> Self {
        assert_eq!(index.len(), alg.dim(), "multi-index length must equal dim δ");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(index, c);
        }
        UEl { alg: alg.clone(), terms }
    }

    /// The generator `∂_i` (zero-based `i`).
    pub fn generator(alg: &Arc<LieAlgebra>, i: usize) -> Self {
        Self::monomial(alg, MultiIndex::unit(alg.dim(), i), Rational::one())
    }

    pub fn from_delta(alg: &Arc<LieAlgebra>, v: &DeltaVector) -> Result<Self> {
        alg.check_dim(v)?;
        let mut out = Self::zero(alg);
        for (i, c) in v.0.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(MultiIndex::unit(alg.dim(), i), c.clone());
            }
        }
        Ok(out)
    }

    pub fn from_terms(alg: &Arc<LieAlgebra>, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut acc = BTreeMap::new();
        for (k, v) in terms {
            assert_eq!(k.len(), alg.dim(), "multi-index length must equal dim δ");
            add_term(&mut acc, k, v);
        }
        UEl { alg: alg.clone(), terms: acc }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, index: &MultiIndex) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the element is `c · 1`.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, v) = self.terms.iter().next().expect("one term");
                k.is_zero().then(|| v.clone())
            }
            _ => None,
        }
    }

    /// Max `|I|` over the stored terms.
    pub fn degree(&self) -> Result<usize> {
        self.terms.keys().map(MultiIndex::degree).max().ok_or(Error::ZeroElement)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if same_ambient(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        UEl {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            add_term(&mut terms, k.clone(), v.clone());
        }
        Ok(UEl { alg: self.alg.clone(), terms })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.alg));
        }
        let degree = self.degree()? + other.degree()?;
        let cap = self.alg.degree_cap();
        if degree > cap {
            return Err(Error::DegreeCapExceeded { degree, cap });
        }
        let mut acc = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                for (k, v) in monomial_product(&self.alg, a, b).iter() {
                    add_term(&mut acc, k.clone(), &c * v);
                }
            }
        }
        Ok(UEl { alg: self.alg.clone(), terms: acc })
    }

    /// Coefficient of `∂^(0)`.
    pub fn counit(&self) -> Rational {
        self.coefficient(&MultiIndex::zero(self.alg.dim()))
    }

    /// The anti-automorphism with `S(∂_k) = -∂_k`.
    pub fn antipode(&self) -> Self {
        let mut acc = BTreeMap::new();
        for (a, c) in &self.terms {
            for (k, v) in monomial_antipode(&self.alg, a).iter() {
                add_term(&mut acc, k.clone(), c * v);
            }
        }
        UEl { alg: self.alg.clone(), terms: acc }
    }

    /// `Δ(∂^(I)) = Σ_{J+K=I} ∂^(J) ⊗ ∂^(K)`.
    pub fn coproduct(&self) -> T2 {
        self.iterated_coproduct::<2>()
    }

    /// `Δ²(a) = (Δ ⊗ id)Δ(a)`.
    pub fn coproduct2(&self) -> T3 {
        self.iterated_coproduct::<3>()
    }

    /// `K`-fold coproduct into `H^{⊗K}`.
    pub fn iterated_coproduct<const K: usize>(&self) -> Tensor<K> {
        let mut out = Tensor::zero(&self.alg);
        for (a, c) in &self.terms {
            for parts in a.compositions::<K>() {
                out.add_term(parts, c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> UElJson {
        UElJson {
            basis: DIVIDED_PBW.into(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    let r = RationalJson::encode(v);
                    UElTermJson { index: k.0.clone(), num: r.num, den: r.den }
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &Arc<LieAlgebra>, json: &UElJson) -> Result<Self> {
        if json.basis != DIVIDED_PBW {
            return Err(Error::Malformed(format!(
                "unsupported basis `{}` (expected `{DIVIDED_PBW}`)",
                json.basis
            )));
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if t.index.len() != alg.dim() {
                return Err(Error::DimensionMismatch { expected: alg.dim(), found: t.index.len() });
            }
            let v = RationalJson { num: t.num.clone(), den: t.den.clone() }.decode()?;
            terms.push((MultiIndex(t.index.clone()), v));
        }
        Ok(Self::from_terms(alg, terms))
    }
}

pub const DIVIDED_PBW: &str = "divided-pbw";

fn divided_pbw() -> String {
    DIVIDED_PBW.into()
}

/// Wire form of a [`UEl`]. Each `index` is a divided power `∂^(I) = ∂^I / I!`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UElJson {
    #[serde(default = "divided_pbw")]
    pub basis: String,
    pub terms: Vec<UElTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UElTermJson {
    pub index: Vec<u32>,
    pub num: String,
    #[serde(default = "one")]
    pub den: String,
}

fn one() -> String {
    "1".into()
}

impl PartialEq for UEl {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for UEl {}

pub(crate) fn fmt_monomial(k: &MultiIndex) -> String {
    if k.is_zero() {
        return "1".into();
    }
    let parts: Vec<String> = k
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("∂{}", i + 1) } else { format!("∂{}^({e})", i + 1) })
        .collect();
    parts.join("")
}

impl fmt::Display for UEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| format!("{}·{}", crate::rational::format_rational(v), fmt_monomial(k)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UEl({self})")
    }
}

impl Add for &UEl {
    type Output = UEl;
    fn add(self, rhs: &UEl) -> UEl {
        self.try_add(rhs).expect("UEl addition")
    }
}

impl Sub for &UEl {
    type Output = UEl;
    fn sub(self, rhs: &UEl) -> UEl {
        self.try_add(&-rhs).expect("UEl subtraction")
    }
}

impl Neg for &UEl {
    type Output = UEl;
    fn neg(self) -> UEl {
        self.scale(&-Rational::one())
    }
}

impl Mul for &UEl {
    type Output = UEl;
    fn mul(self, rhs: &UEl) -> UEl {
        self.try_mul(rhs).expect("UEl multiplication")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn gen(alg: &Arc<LieAlgebra>, i: usize) -> UEl {
        UEl::generator(alg, i)
    }

    fn mono(alg: &Arc<LieAlgebra>, e: &[u32], c: Rational) -> UEl {
        UEl::monomial(alg, MultiIndex::new(e.to_vec()), c)
    }

    #[test]
    fn divided_square_in_one_variable() {
        let k = LieAlgebra::abelian(1);
        let d = gen(&k, 0);
        assert_eq!(&d * &d, mono(&k, &[2], int(2)));
    }

    #[test]
    fn heisenberg_straightening() {
        let h = LieAlgebra::heisenberg();
        let lhs = &gen(&h, 1) * &gen(&h, 0);
        let rhs = &mono(&h, &[1, 1, 0], int(1)) - &mono(&h, &[0, 0, 1], int(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl2_relation() {
        // basis (h, e, f)
        let s = LieAlgebra::sl2();
        let (h, e, f) = (gen(&s, 0), gen(&s, 1), gen(&s, 2));
        assert_eq!(&f * &e, &(&e * &f) - &h);
        // h e = e h + 2e
        assert_eq!(&h * &e, mono(&s, &[1, 1, 0], int(1)));
        assert_eq!(&e * &h, &mono(&s, &[1, 1, 0], int(1)) - &e.scale(&int(2)));
    }

    #[test]
    fn coproduct_examples() {
        let k = LieAlgebra::abelian(1);
        let one = UEl::one(&k);
        assert_eq!(one.coproduct(), T2::pure([&one, &one]));
        let d2 = mono(&k, &[2], int(1));
        let d = gen(&k, 0);
        let expected = &(&T2::pure([&d2, &one]) + &T2::pure([&d, &d])) + &T2::pure([&one, &d2]);
        assert_eq!(d2.coproduct(), expected);
    }

    #[test]
    fn coproduct_matches_homomorphism_expansion() {
        // Δ(∂1∂3) computed from Δ(∂1)Δ(∂3)
        let h = LieAlgebra::heisenberg();
        let (d1, d3) = (gen(&h, 0), gen(&h, 2));
        let one = UEl::one(&h);
        let prod = &d1 * &d3;
        let oracle = &(&T2::pure([&d1, &one]) + &T2::pure([&one, &d1])) * &(&T2::pure([&d3, &one]) + &T2::pure([&one, &d3]));
        assert_eq!(prod.coproduct(), oracle);
        let expected = &(&(&T2::pure([&prod, &one]) + &T2::pure([&d1, &d3])) + &T2::pure([&d3, &d1])) + &T2::pure([&one, &prod]);
        assert_eq!(prod.coproduct(), expected);
    }

    #[test]
    fn counit_examples() {
        let h = LieAlgebra::heisenberg();
        assert_eq!(UEl::one(&h).counit(), int(1));
        assert_eq!(mono(&h, &[3, 0, 0], int(1)).counit(), int(0));
        let x = &UEl::scalar(&h, int(5)) - &gen(&h, 0).scale(&int(2));
        assert_eq!(x.counit(), int(5));
    }

    #[test]
    fn antipode_examples() {
        let k = LieAlgebra::abelian(1);
        let d2 = mono(&k, &[2], int(1));
        assert_eq!(d2.antipode(), d2);
        assert_eq!(UEl::one(&k).antipode(), UEl::one(&k));

        let h = LieAlgebra::heisenberg();
        let d1d2 = mono(&h, &[1, 1, 0], int(1));
        let expected = &d1d2 - &gen(&h, 2);
        assert_eq!(d1d2.antipode(), expected);
    }

    #[test]
    fn degree_examples() {
        let h = LieAlgebra::heisenberg();
        assert_eq!(mono(&h, &[3, 0, 0], int(1)).degree().unwrap(), 3);
        assert_eq!(UEl::one(&h).degree().unwrap(), 0);
        let x = &gen(&h, 0) + &mono(&h, &[2, 0, 0], int(1));
        assert_eq!(x.degree().unwrap(), 2);
        assert_eq!(UEl::zero(&h).degree(), Err(Error::ZeroElement));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = LieAlgebra::abelian(3);
        let h = LieAlgebra::heisenberg();
        assert_eq!(gen(&a, 0).try_mul(&gen(&h, 0)), Err(Error::AmbientMismatch));
    }

    #[test]
    fn degree_cap_fails_loudly() {
        let k = Arc::new(
            LieAlgebra::new(1, vec![vec![vec![int(0)]]], None).unwrap().with_degree_cap(3),
        );
        let d2 = mono(&k, &[2], int(1));
        assert_eq!(d2.try_mul(&d2), Err(Error::DegreeCapExceeded { degree: 4, cap: 3 }));
    }

    #[test]
    fn compositions_enumerate_all_splits() {
        let i = MultiIndex::new(vec![2, 1]);
        let parts = i.compositions::<2>();
        assert_eq!(parts.len(), 6);
        assert!(parts.iter().all(|[a, b]| a.plus(b) == i));
        assert_eq!(i.compositions::<3>().len(), 6 * 3);
    }

    #[test]
    fn json_round_trip() {
        let h = LieAlgebra::heisenberg();
        let x = &mono(&h, &[1, 0, 2], frac(-3, 4)) + &UEl::one(&h);
        let back = UEl::from_json(&h, &x.to_json()).unwrap();
        assert_eq!(back, x);
    }
}
