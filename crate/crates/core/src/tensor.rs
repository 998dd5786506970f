//! Sparse tensors in `H^{⊗K}` for `K = 2, 3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{same_ambient, LieAlgebra};
use crate::rational::{format_rational, Rational, RationalJson};
use crate::uea::{fmt_monomial, monomial_antipode, monomial_product, MultiIndex, UEl};

pub type Key<const K: usize> = [MultiIndex; K];

/// `Σ c · ∂^(I_1) ⊗ ⋯ ⊗ ∂^(I_K)`.
#[derive(Clone)]
pub struct Tensor<const K: usize> {
    alg: Arc<LieAlgebra>,
    terms: BTreeMap<Key<K>, Rational>,
}

pub type T2 = Tensor<2>;
pub type T3 = Tensor<3>;

/// Lifts `H⊗H -> H⊗H⊗H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    /// `(Δ ⊗ id)β`
    CoproductLeft,
    /// `(id ⊗ Δ)β`
    CoproductRight,
    /// `β ⊗ 1`
    PadRight,
    /// `1 ⊗ β`
    PadLeft,
}

/// Slot permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perm {
    /// flip on `H⊗H`
    Sigma,
    /// `(12)` on `H⊗³`
    Swap12,
    /// `(23)` on `H⊗³`
    Swap23,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl<const K: usize> Tensor<K> {
    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        Tensor { alg: alg.clone(), terms: BTreeMap::new() }
    }

    /// `c · 1⊗⋯⊗1`.
    pub fn scalar(alg: &Arc<LieAlgebra>, c: Rational) -> Self {
        let mut t = Self::zero(alg);
        t.add_term(std::array::from_fn(|_| MultiIndex::zero(alg.dim())), c);
        t
    }

    pub fn one(alg: &Arc<LieAlgebra>) -> Self {
        Self::scalar(alg, Rational::one())
    }

    /// `a_1 ⊗ ⋯ ⊗ a_K`.
    pub fn pure(factors: [&UEl; K]) -> Self {
        let alg = factors[0].algebra().clone();
        for f in &factors[1..] {
            assert!(same_ambient(&alg, f.algebra()), "tensor factors over different algebras");
        }
        let mut partial: Vec<(Vec<MultiIndex>, Rational)> = vec![(Vec::new(), Rational::one())];
        for f in factors {
            let mut next = Vec::new();
            for (keys, c) in &partial {
                for (k, v) in f.terms() {
                    let mut ks = keys.clone();
                    ks.push(k.clone());
                    next.push((ks, c * v));
                }
            }
            partial = next;
        }
        let mut t = Self::zero(&alg);
        for (keys, c) in partial {
            t.add_term(to_key(keys), c);
        }
        t
    }

    pub fn from_terms(alg: &Arc<LieAlgebra>, terms: impl IntoIterator<Item = (Key<K>, Rational)>) -> Self {
        let mut t = Self::zero(alg);
        for (k, v) in terms {
            t.add_term(k, v);
        }
        t
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Key<K>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &Key<K>) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, key: Key<K>, v: Rational) {
        if v.is_zero() {
            return;
        }
        debug_assert!(key.iter().all(|k| k.len() == self.alg.dim()));
        match self.terms.entry(key) {
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

    /// Max total degree `|I_1| + ⋯ + |I_K|`, or `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.iter().map(MultiIndex::degree).sum()).max()
    }

    /// Max degree appearing in a single slot.
    pub fn slot_degree(&self) -> Option<usize> {
        self.terms.keys().flat_map(|k| k.iter().map(MultiIndex::degree)).max()
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
        Tensor {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        assert!(same_ambient(&self.alg, &other.alg), "tensors over different algebras");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Slotwise product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = Self::zero(&self.alg);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        let cap = self.alg.degree_cap();
        let degree = self.slot_degree().unwrap_or(0) + other.slot_degree().unwrap_or(0);
        if degree > cap {
            return Err(Error::DegreeCapExceeded { degree, cap });
        }
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let factors: Vec<_> = (0..K).map(|s| monomial_product(&self.alg, &a[s], &b[s])).collect();
                let c = ca * cb;
                expand_product(&factors, &c, &mut |key, v| out.add_term(to_key(key), v));
            }
        }
        Ok(out)
    }

    /// Key permutation sending slot `p[s]` of the input to slot `s` of the output.
    fn permuted(&self, p: [usize; K]) -> Self {
        Tensor {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (std::array::from_fn(|s| k[p[s]].clone()), v.clone()))
                .collect(),
        }
    }

    pub fn swap(&self, perm: Perm) -> Result<Self> {
        let p: Vec<usize> = match (perm, K) {
            (Perm::Sigma, 2) => vec![1, 0],
            (Perm::Swap12, 3) => vec![1, 0, 2],
            (Perm::Swap23, 3) => vec![0, 2, 1],
            (Perm::Sigma, _) => return Err(Error::ArityMismatch { expected: 2, found: K }),
            _ => return Err(Error::ArityMismatch { expected: 3, found: K }),
        };
        Ok(self.permuted(std::array::from_fn(|s| p[s])))
    }

    /// `f_1 ⊗ ⋯ ⊗ f_{K-1} ⊗ z ↦ Σ f_1 S(z_1) ⊗ ⋯ ⊗ f_{K-1} S(z_{K-1}) ⊗ z_K`
    /// (forward) or `f_i z_i` in place of `f_i S(z_i)` (inverse).
    pub fn fourier(&self, direction: Direction) -> Self {
        let mut out = Self::zero(&self.alg);
        for (key, c) in &self.terms {
            let z = &key[K - 1];
            for parts in z.compositions::<K>() {
                let mut factors = Vec::with_capacity(K);
                for s in 0..K - 1 {
                    let right: Arc<Vec<(MultiIndex, Rational)>> = match direction {
                        Direction::Forward => monomial_antipode(&self.alg, &parts[s]),
                        Direction::Inverse => Arc::new(vec![(parts[s].clone(), Rational::one())]),
                    };
                    let mut slot: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
                    for (m, cm) in right.iter() {
                        for (p, cp) in monomial_product(&self.alg, &key[s], m).iter() {
                            *slot.entry(p.clone()).or_insert_with(Rational::zero) += cm * cp;
                        }
                    }
                    factors.push(Arc::new(slot.into_iter().filter(|(_, v)| !v.is_zero()).collect()));
                }
                factors.push(Arc::new(vec![(parts[K - 1].clone(), Rational::one())]));
                expand_product(&factors, c, &mut |k, v| out.add_term(to_key(k), v));
            }
        }
        out
    }
}

fn to_key<const K: usize>(keys: Vec<MultiIndex>) -> Key<K> {
    keys.try_into().unwrap_or_else(|v: Vec<MultiIndex>| panic!("expected {K} slots, got {}", v.len()))
}

fn expand_product(
    factors: &[Arc<Vec<(MultiIndex, Rational)>>],
    scale: &Rational,
    emit: &mut dyn FnMut(Vec<MultiIndex>, Rational),
) {
    fn rec(
        factors: &[Arc<Vec<(MultiIndex, Rational)>>],
        acc: &mut Vec<MultiIndex>,
        c: Rational,
        emit: &mut dyn FnMut(Vec<MultiIndex>, Rational),
    ) {
        match factors.split_first() {
            None => emit(acc.clone(), c),
            Some((first, rest)) => {
                for (k, v) in first.iter() {
                    acc.push(k.clone());
                    rec(rest, acc, &c * v, emit);
                    acc.pop();
                }
            }
        }
    }
    rec(factors, &mut Vec::with_capacity(factors.len()), scale.clone(), emit);
}

impl T2 {
    pub fn flip(&self) -> T2 {
        self.permuted([1, 0])
    }

    pub fn lift(&self, mode: LiftMode) -> T3 {
        let mut out = T3::zero(&self.alg);
        let unit = MultiIndex::zero(self.alg.dim());
        for ([a, b], c) in &self.terms {
            match mode {
                LiftMode::CoproductLeft => {
                    for [x, y] in a.compositions::<2>() {
                        out.add_term([x, y, b.clone()], c.clone());
                    }
                }
                LiftMode::CoproductRight => {
                    for [x, y] in b.compositions::<2>() {
                        out.add_term([a.clone(), x, y], c.clone());
                    }
                }
                LiftMode::PadRight => out.add_term([a.clone(), b.clone(), unit.clone()], c.clone()),
                LiftMode::PadLeft => out.add_term([unit.clone(), a.clone(), b.clone()], c.clone()),
            }
        }
        out
    }

    /// Normal form `β = Σ (∂^(h_i) ⊗ 1) Δ(l_i)`.
    pub fn galois_decompose(&self) -> GaloisForm {
        let f = self.fourier(Direction::Forward);
        let mut pairs: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Rational>> = BTreeMap::new();
        for ([h, l], c) in f.terms {
            pairs.entry(h).or_default().insert(l, c);
        }
        GaloisForm {
            alg: self.alg.clone(),
            pairs: pairs
                .into_iter()
                .map(|(h, ls)| (h, UEl::from_terms(&self.alg, ls)))
                .filter(|(_, l)| !l.is_zero())
                .collect(),
        }
    }

    /// `h ⊗ 1`.
    pub fn left(h: &UEl) -> T2 {
        T2::pure([h, &UEl::one(h.algebra())])
    }

    /// `1 ⊗ h`.
    pub fn right(h: &UEl) -> T2 {
        T2::pure([&UEl::one(h.algebra()), h])
    }
}

impl T3 {
    pub fn swap12(&self) -> T3 {
        self.permuted([1, 0, 2])
    }

    pub fn swap23(&self) -> T3 {
        self.permuted([0, 2, 1])
    }
}

/// `Σ_i (∂^(h_i) ⊗ 1) Δ(l_i)` with distinct `h_i`.
#[derive(Clone, PartialEq)]
pub struct GaloisForm {
    alg: Arc<LieAlgebra>,
    pub pairs: Vec<(MultiIndex, UEl)>,
}

impl GaloisForm {
    pub fn expand(&self) -> T2 {
        let mut out = T2::zero(&self.alg);
        for (h, l) in &self.pairs {
            let left = T2::left(&UEl::monomial(&self.alg, h.clone(), Rational::one()));
            let term = &left * &l.coproduct();
            out.add_assign_scaled(&term, &Rational::one());
        }
        out
    }
}

impl fmt::Debug for GaloisForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.pairs.iter().map(|(h, l)| format!("({}⊗1)Δ({})", fmt_monomial(h), l)).collect();
        write!(f, "GaloisForm[{}]", parts.join(" + "))
    }
}

impl<const K: usize> PartialEq for Tensor<K> {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl<const K: usize> Eq for Tensor<K> {}

impl<const K: usize> fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let slots: Vec<String> = k.iter().map(fmt_monomial).collect();
                format!("{}·{}", format_rational(v), slots.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<const K: usize> fmt::Debug for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{K}({self})")
    }
}

impl<const K: usize> Add for &Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.try_add(rhs).expect("tensor addition")
    }
}

impl<const K: usize> Sub for &Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.try_add(&-rhs).expect("tensor subtraction")
    }
}

impl<const K: usize> Neg for &Tensor<K> {
    type Output = Tensor<K>;
    fn neg(self) -> Tensor<K> {
        self.scale(&-Rational::one())
    }
}

impl<const K: usize> Mul for &Tensor<K> {
    type Output = Tensor<K>;
    fn mul(self, rhs: &Tensor<K>) -> Tensor<K> {
        self.try_mul(rhs).expect("tensor multiplication")
    }
}

/// Wire form shared by `T2` and `T3`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorJson {
    pub arity: usize,
    pub terms: Vec<TensorTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorTermJson {
    #[serde(rename = "I")]
    pub i: Vec<u32>,
    #[serde(rename = "J")]
    pub j: Vec<u32>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<u32>>,
    pub num: String,
    #[serde(default = "one")]
    pub den: String,
}

fn one() -> String {
    "1".into()
}

impl<const K: usize> Tensor<K> {
    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            arity: K,
            terms: self
                .terms
                .iter()
                .map(|(key, v)| {
                    let r = RationalJson::encode(v);
                    TensorTermJson {
                        i: key[0].exponents().to_vec(),
                        j: key[1].exponents().to_vec(),
                        k: (K == 3).then(|| key[2].exponents().to_vec()),
                        num: r.num,
                        den: r.den,
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &Arc<LieAlgebra>, json: &TensorJson) -> Result<Self> {
        if json.arity != K {
            return Err(Error::ArityMismatch { expected: K, found: json.arity });
        }
        let mut out = Self::zero(alg);
        for t in &json.terms {
            let mut slots = vec![t.i.clone(), t.j.clone()];
            match (&t.k, K) {
                (Some(k), 3) => slots.push(k.clone()),
                (None, 2) => {}
                _ => return Err(Error::Malformed(format!("tensor term slots do not match arity {K}"))),
            }
            for s in &slots {
                if s.len() != alg.dim() {
                    return Err(Error::DimensionMismatch { expected: alg.dim(), found: s.len() });
                }
            }
            let v = RationalJson { num: t.num.clone(), den: t.den.clone() }.decode()?;
            out.add_term(to_key(slots.into_iter().map(MultiIndex::new).collect()), v);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mono(alg: &Arc<LieAlgebra>, e: &[u32]) -> UEl {
        UEl::monomial(alg, MultiIndex::new(e.to_vec()), Rational::one())
    }

    #[test]
    fn slotwise_products() {
        let k = LieAlgebra::abelian(1);
        let one = UEl::one(&k);
        let d = mono(&k, &[1]);
        assert_eq!(&T2::pure([&one, &d]) * &T2::pure([&d, &one]), T2::pure([&d, &d]));
        let d2 = mono(&k, &[2]).scale(&int(2));
        assert_eq!(&T2::pure([&d, &one]) * &T2::pure([&d, &one]), T2::pure([&d2, &one]));

        let h = LieAlgebra::heisenberg();
        let (d1, d2) = (mono(&h, &[1, 0, 0]), mono(&h, &[0, 1, 0]));
        let one = UEl::one(&h);
        let expected = &mono(&h, &[1, 1, 0]) - &mono(&h, &[0, 0, 1]);
        assert_eq!(&T2::pure([&d2, &one]) * &T2::pure([&d1, &one]), T2::pure([&expected, &one]));
    }

    #[test]
    fn lift_examples() {
        let k = LieAlgebra::abelian(1);
        let one = UEl::one(&k);
        let d = mono(&k, &[1]);
        let d2 = mono(&k, &[2]);
        let expected = &T3::pure([&one, &d, &one]) + &T3::pure([&one, &one, &d]);
        assert_eq!(T2::pure([&one, &d]).lift(LiftMode::CoproductRight), expected);
        assert_eq!(T2::pure([&d2, &one]).lift(LiftMode::PadRight), T3::pure([&d2, &one, &one]));
        let expected = &(&T3::pure([&d2, &one, &one]) + &T3::pure([&d, &d, &one])) + &T3::pure([&one, &d2, &one]);
        assert_eq!(T2::pure([&d2, &one]).lift(LiftMode::CoproductLeft), expected);
        assert_eq!(T2::pure([&d, &d2]).lift(LiftMode::PadLeft), T3::pure([&one, &d, &d2]));
    }

    #[test]
    fn swaps() {
        let k = LieAlgebra::abelian(3);
        let (a, b, c) = (mono(&k, &[1, 0, 0]), mono(&k, &[0, 1, 0]), mono(&k, &[0, 0, 2]));
        let one = UEl::one(&k);
        assert_eq!(T2::pure([&one, &a]).swap(Perm::Sigma).unwrap(), T2::pure([&a, &one]));
        assert_eq!(T3::pure([&a, &b, &c]).swap(Perm::Swap12).unwrap(), T3::pure([&b, &a, &c]));
        assert_eq!(T3::pure([&a, &b, &c]).swap(Perm::Swap23).unwrap(), T3::pure([&a, &c, &b]));
        assert_eq!(
            T2::pure([&a, &b]).swap(Perm::Swap12),
            Err(Error::ArityMismatch { expected: 3, found: 2 })
        );
        assert_eq!(
            T3::pure([&a, &b, &c]).swap(Perm::Sigma),
            Err(Error::ArityMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn fourier_examples() {
        let k = LieAlgebra::abelian(1);
        let one = UEl::one(&k);
        let d = mono(&k, &[1]);
        let expected = &T2::pure([&one, &d]) - &T2::pure([&d, &one]);
        assert_eq!(T2::pure([&one, &d]).fourier(Direction::Forward), expected);
        let dd = T2::pure([&d, &d]);
        assert_eq!(dd.fourier(Direction::Forward).fourier(Direction::Inverse), dd);
        let h = mono(&k, &[3]);
        assert_eq!(T2::left(&h).fourier(Direction::Forward), T2::left(&h));
    }

    #[test]
    fn galois_examples() {
        let k = LieAlgebra::abelian(1);
        let d = mono(&k, &[1]);
        let one = UEl::one(&k);
        let g = T2::pure([&d, &d]).galois_decompose();
        assert_eq!(
            g.pairs,
            vec![
                (MultiIndex::new(vec![1]), d.clone()),
                (MultiIndex::new(vec![2]), one.scale(&int(-2))),
            ]
        );
        assert_eq!(g.expand(), T2::pure([&d, &d]));

        let g = T2::pure([&one, &d]).galois_decompose();
        assert_eq!(
            g.pairs,
            vec![(MultiIndex::new(vec![0]), d.clone()), (MultiIndex::new(vec![1]), one.scale(&int(-1)))]
        );
        let h = mono(&k, &[2]);
        assert_eq!(T2::left(&h).galois_decompose().pairs, vec![(MultiIndex::new(vec![2]), one.clone())]);
    }

    #[test]
    fn json_round_trip() {
        let h = LieAlgebra::heisenberg();
        let t = &T3::pure([&mono(&h, &[1, 0, 0]), &mono(&h, &[0, 2, 0]), &UEl::one(&h)]) + &T3::one(&h);
        assert_eq!(T3::from_json(&h, &t.to_json()).unwrap(), t);
        assert!(T2::from_json(&h, &t.to_json()).is_err());
    }
}
