//! Pseudo-products on free modules `A = He_1 ⊕ ⋯ ⊕ He_n`.
//!
//! Since `A` is free, `H^{⊗K} ⊗_H A ≅ ⊕_k H^{⊗K} e_k` by
//! `β ⊗_H h e_k ↦ β Δ^{K-1}(h)`. Products and compositions are computed in that
//! component picture. [`PseudoEl`] stores the canonical form with the last tensor
//! slot normalised to `1`, obtained from each component by the Fourier map.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{same_ambient, LieAlgebra, LieAlgebraJson};
use crate::rational::{Rational, RationalJson};
use crate::tensor::{Direction, Key, LiftMode, Perm, Tensor, TensorJson, T2, T3};
use crate::uea::UEl;

/// `e_i ∗ e_j = Σ_k α^k_{ij} ⊗_H e_k`.
#[derive(Clone)]
pub struct ProductTable {
    alg: Arc<LieAlgebra>,
    rank: usize,
    alpha: Vec<T2>,
}

impl ProductTable {
    pub fn zero(alg: &Arc<LieAlgebra>, rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        ProductTable { alg: alg.clone(), rank, alpha: vec![T2::zero(alg); rank * rank * rank] }
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(i < self.rank && j < self.rank && k < self.rank, "module index out of range");
        (i * self.rank + j) * self.rank + k
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    /// `α^k_{ij}`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &T2 {
        &self.alpha[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, t: T2) -> Result<()> {
        if !same_ambient(&self.alg, t.algebra()) {
            return Err(Error::AmbientMismatch);
        }
        let idx = self.idx(i, j, k);
        self.alpha[idx] = t;
        Ok(())
    }

    /// Rank-1 table `e ∗ e = α ⊗_H e`.
    pub fn rank_one(alpha: T2) -> Self {
        let alg = alpha.algebra().clone();
        ProductTable { alg, rank: 1, alpha: vec![alpha] }
    }

    fn check(&self, x: &ModuleElement) -> Result<()> {
        if !same_ambient(&self.alg, &x.alg) {
            return Err(Error::AmbientMismatch);
        }
        if x.coords.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: x.coords.len() });
        }
        Ok(())
    }

    /// Exact termwise equality of all coefficients.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        if !same_ambient(&self.alg, &other.alg) {
            return Err(Error::AmbientMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(self.alpha == other.alpha)
    }

    /// Max total degree over all coefficients.
    pub fn degree(&self) -> usize {
        self.alpha.iter().filter_map(Tensor::total_degree).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> ProductTableJson {
        let mut alpha = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let t = self.get(i, j, k);
                    if !t.is_zero() {
                        alpha.push(AlphaEntryJson { i, j, k, t2: t.to_json() });
                    }
                }
            }
        }
        ProductTableJson { rank: self.rank, lie: self.alg.to_json(), alpha }
    }

    pub fn from_json(json: &ProductTableJson) -> Result<Self> {
        if json.rank == 0 {
            return Err(Error::Malformed("rank must be positive".into()));
        }
        let alg = Arc::new(LieAlgebra::from_json(&json.lie)?);
        let mut table = ProductTable::zero(&alg, json.rank);
        for e in &json.alpha {
            if e.i >= json.rank || e.j >= json.rank || e.k >= json.rank {
                return Err(Error::Malformed(format!(
                    "alpha entry ({}, {}, {}) out of range for rank {}",
                    e.i, e.j, e.k, json.rank
                )));
            }
            let t = T2::from_json(&alg, &e.t2)?;
            let idx = table.idx(e.i, e.j, e.k);
            table.alpha[idx] = &table.alpha[idx] + &t;
        }
        Ok(table)
    }
}

impl PartialEq for ProductTable {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other).unwrap_or(false)
    }
}

impl fmt::Debug for ProductTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ProductTable(rank {}) {{", self.rank)?;
        for i in 0..self.rank {
            for j in 0..self.rank {
                let parts: Vec<String> = (0..self.rank)
                    .filter(|&k| !self.get(i, j, k).is_zero())
                    .map(|k| format!("({}) ⊗_H e{}", self.get(i, j, k), k + 1))
                    .collect();
                let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                writeln!(f, "  e{} ∗ e{} = {}", i + 1, j + 1, rhs)?;
            }
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductTableJson {
    pub rank: usize,
    pub lie: LieAlgebraJson,
    pub alpha: Vec<AlphaEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaEntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub t2: TensorJson,
}

/// `Σ_k h_k e_k`.
#[derive(Clone, PartialEq)]
pub struct ModuleElement {
    alg: Arc<LieAlgebra>,
    coords: Vec<UEl>,
}

impl ModuleElement {
    pub fn zero(alg: &Arc<LieAlgebra>, rank: usize) -> Self {
        ModuleElement { alg: alg.clone(), coords: vec![UEl::zero(alg); rank] }
    }

    /// `e_i`.
    pub fn basis(alg: &Arc<LieAlgebra>, rank: usize, i: usize) -> Self {
        let mut x = Self::zero(alg, rank);
        x.coords[i] = UEl::one(alg);
        x
    }

    pub fn new(coords: Vec<UEl>) -> Result<Self> {
        let alg = coords.first().ok_or(Error::RankMismatch { expected: 1, found: 0 })?.algebra().clone();
        if coords.iter().any(|c| !same_ambient(&alg, c.algebra())) {
            return Err(Error::AmbientMismatch);
        }
        Ok(ModuleElement { alg, coords })
    }

    pub fn coords(&self) -> &[UEl] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(UEl::is_zero)
    }

    /// `h · x`.
    pub fn act(&self, h: &UEl) -> Result<Self> {
        let coords = self.coords.iter().map(|c| h.try_mul(c)).collect::<Result<_>>()?;
        Ok(ModuleElement { alg: self.alg.clone(), coords })
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c}) e{}", k + 1))
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Canonical element of `H^{⊗K} ⊗_H A`: `c · (∂^(I_1) ⊗ ⋯ ⊗ ∂^(I_{K-1}) ⊗ 1) ⊗_H ∂^(J) e_k`,
/// keyed by `(k, [I_1, …, I_{K-1}, J])`.
#[derive(Clone)]
pub struct PseudoEl<const K: usize> {
    alg: Arc<LieAlgebra>,
    rank: usize,
    terms: BTreeMap<(usize, Key<K>), Rational>,
}

pub type PseudoEl2 = PseudoEl<2>;
pub type PseudoEl3 = PseudoEl<3>;

impl<const K: usize> PseudoEl<K> {
    pub fn zero(alg: &Arc<LieAlgebra>, rank: usize) -> Self {
        PseudoEl { alg: alg.clone(), rank, terms: BTreeMap::new() }
    }

    /// From the plain components `γ_k` of `Σ_k γ_k ⊗_H e_k`.
    pub fn from_components(alg: &Arc<LieAlgebra>, components: &[Tensor<K>]) -> Self {
        let mut out = Self::zero(alg, components.len());
        for (k, c) in components.iter().enumerate() {
            for (key, v) in c.fourier(Direction::Forward).terms() {
                out.terms.insert((k, key.clone()), v.clone());
            }
        }
        out
    }

    /// Plain component `γ_k ∈ H^{⊗K}` with `x = Σ_k γ_k ⊗_H e_k`.
    pub fn component(&self, k: usize) -> Tensor<K> {
        self.canonical_part(k).fourier(Direction::Inverse)
    }

    pub fn components(&self) -> Vec<Tensor<K>> {
        (0..self.rank).map(|k| self.component(k)).collect()
    }

    /// Canonical keys of module index `k` as a tensor (last slot holds `J`).
    pub fn canonical_part(&self, k: usize) -> Tensor<K> {
        Tensor::from_terms(
            &self.alg,
            self.terms.iter().filter(|((m, _), _)| *m == k).map(|((_, key), v)| (key.clone(), v.clone())),
        )
    }

    /// Canonical form of `Σ β ⊗_H x` for arbitrary representatives.
    pub fn normalize(alg: &Arc<LieAlgebra>, rank: usize, raw: &[(Tensor<K>, ModuleElement)]) -> Result<Self> {
        let mut comps = vec![Tensor::<K>::zero(alg); rank];
        for (beta, x) in raw {
            if !same_ambient(alg, beta.algebra()) || !same_ambient(alg, &x.alg) {
                return Err(Error::AmbientMismatch);
            }
            if x.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: x.rank() });
            }
            for (k, h) in x.coords.iter().enumerate() {
                if !h.is_zero() {
                    let t = beta.try_mul(&h.iterated_coproduct::<K>())?;
                    comps[k].add_assign_scaled(&t, &Rational::one());
                }
            }
        }
        Ok(Self::from_components(alg, &comps))
    }

    pub fn terms(&self) -> &BTreeMap<(usize, Key<K>), Rational> {
        &self.terms
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(β ⊗_H id)` acting on the left.
    pub fn act(&self, beta: &Tensor<K>) -> Result<Self> {
        let comps = self.components().iter().map(|c| beta.try_mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_components(&self.alg, &comps))
    }

    /// `(perm ⊗_H id)`, renormalised.
    pub fn permute(&self, perm: Perm) -> Result<Self> {
        let comps = self.components().iter().map(|c| c.swap(perm)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_components(&self.alg, &comps))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if !same_ambient(&self.alg, &other.alg) {
            return Err(Error::AmbientMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let mut out = self.clone();
        for (key, v) in &other.terms {
            let e = out.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *e -= v;
            if e.is_zero() {
                out.terms.remove(key);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PseudoElJson {
        PseudoElJson {
            arity: K,
            terms: self
                .terms
                .iter()
                .map(|((k, key), v)| {
                    let r = RationalJson::encode(v);
                    PseudoTermJson {
                        slots: key[..K - 1].iter().map(|m| m.exponents().to_vec()).collect(),
                        j: key[K - 1].exponents().to_vec(),
                        module: *k,
                        num: r.num,
                        den: r.den,
                    }
                })
                .collect(),
        }
    }
}

impl<const K: usize> PartialEq for PseudoEl<K> {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.alg, &other.alg) && self.rank == other.rank && self.terms == other.terms
    }
}

impl<const K: usize> fmt::Display for PseudoEl<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = (0..self.rank)
            .filter(|&k| self.terms.keys().any(|(m, _)| *m == k))
            .map(|k| format!("[{}] e{}", self.canonical_part(k), k + 1))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<const K: usize> fmt::Debug for PseudoEl<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PseudoEl{K}({self})")
    }
}

/// Canonical terms; `slots` are the leading exponents, `J` acts on `e_module`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudoElJson {
    pub arity: usize,
    pub terms: Vec<PseudoTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudoTermJson {
    pub slots: Vec<Vec<u32>>,
    #[serde(rename = "J")]
    pub j: Vec<u32>,
    pub module: usize,
    pub num: String,
    pub den: String,
}

/// Components of `x ∗ y`.
fn product_components(x: &ModuleElement, y: &ModuleElement, t: &ProductTable) -> Result<Vec<T2>> {
    t.check(x)?;
    t.check(y)?;
    let mut comps = vec![T2::zero(&t.alg); t.rank];
    for (i, xi) in x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, yj) in y.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let hg = T2::pure([xi, yj]);
            for (m, comp) in comps.iter_mut().enumerate() {
                let a = t.get(i, j, m);
                if !a.is_zero() {
                    comp.add_assign_scaled(&hg.try_mul(a)?, &Rational::one());
                }
            }
        }
    }
    Ok(comps)
}

/// `x ∗ y` in canonical form.
pub fn pseudo_product(x: &ModuleElement, y: &ModuleElement, t: &ProductTable) -> Result<PseudoEl2> {
    Ok(PseudoEl2::from_components(&t.alg, &product_components(x, y, t)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(x ∗ y) ∗ z`
    Left,
    /// `x ∗ (y ∗ z)`
    Right,
}

fn compose_components(x: &ModuleElement, y: &ModuleElement, z: &ModuleElement, t: &ProductTable, side: Side) -> Result<Vec<T3>> {
    t.check(z)?;
    let n = t.rank;
    let mut out = vec![T3::zero(&t.alg); n];
    match side {
        Side::Left => {
            // Σ_m (γ_m ⊗ 1)(Δ ⊗ id)(e_m ∗ z)
            let gamma = product_components(x, y, t)?;
            for (m, g) in gamma.iter().enumerate().filter(|(_, g)| !g.is_zero()) {
                let outer = g.lift(LiftMode::PadRight);
                let inner = product_components(&ModuleElement::basis(&t.alg, n, m), z, t)?;
                for (k, d) in inner.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
                    out[k].add_assign_scaled(&outer.try_mul(&d.lift(LiftMode::CoproductLeft))?, &Rational::one());
                }
            }
        }
        Side::Right => {
            // Σ_m (1 ⊗ ε_m)(id ⊗ Δ)(x ∗ e_m)
            let eps = product_components(y, z, t)?;
            for (m, e) in eps.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                let outer = e.lift(LiftMode::PadLeft);
                let inner = product_components(x, &ModuleElement::basis(&t.alg, n, m), t)?;
                for (k, d) in inner.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
                    out[k].add_assign_scaled(&outer.try_mul(&d.lift(LiftMode::CoproductRight))?, &Rational::one());
                }
            }
        }
    }
    Ok(out)
}

/// `(x ∗ y) ∗ z` or `x ∗ (y ∗ z)` in canonical form.
pub fn compose(x: &ModuleElement, y: &ModuleElement, z: &ModuleElement, t: &ProductTable, side: Side) -> Result<PseudoEl3> {
    t.check(x)?;
    t.check(y)?;
    Ok(PseudoEl3::from_components(&t.alg, &compose_components(x, y, z, t, side)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "assoc")]
    Assoc,
    #[serde(rename = "left-prelie")]
    LeftPreLie,
    #[serde(rename = "right-prelie")]
    RightPreLie,
}

impl Axiom {
    pub const ALL: [Axiom; 3] = [Axiom::Assoc, Axiom::LeftPreLie, Axiom::RightPreLie];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Assoc => "assoc",
            Axiom::LeftPreLie => "left-prelie",
            Axiom::RightPreLie => "right-prelie",
        }
    }
}

impl std::str::FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" => Ok(Axiom::Assoc),
            "left-prelie" => Ok(Axiom::LeftPreLie),
            "right-prelie" => Ok(Axiom::RightPreLie),
            other => Err(Error::Malformed(format!("unknown axiom `{other}`"))),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn assoc_defect(x: &ModuleElement, y: &ModuleElement, z: &ModuleElement, t: &ProductTable) -> Result<PseudoEl3> {
    let l = compose_components(x, y, z, t, Side::Left)?;
    let r = compose_components(x, y, z, t, Side::Right)?;
    let diff: Vec<T3> = l.iter().zip(&r).map(|(a, b)| a - b).collect();
    Ok(PseudoEl3::from_components(&t.alg, &diff))
}

/// The axiom's defect; zero iff the identity holds at `(x, y, z)`.
pub fn defect(x: &ModuleElement, y: &ModuleElement, z: &ModuleElement, t: &ProductTable, axiom: Axiom) -> Result<PseudoEl3> {
    t.check(x)?;
    t.check(y)?;
    t.check(z)?;
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Ok(PseudoEl3::zero(&t.alg, t.rank));
    }
    let a = assoc_defect(x, y, z, t)?;
    match axiom {
        Axiom::Assoc => Ok(a),
        Axiom::LeftPreLie => a.try_sub(&assoc_defect(y, x, z, t)?.permute(Perm::Swap12)?),
        Axiom::RightPreLie => a.try_sub(&assoc_defect(x, z, y, t)?.permute(Perm::Swap23)?),
    }
}

/// Nonzero defect at a generator triple `(e_i, e_j, e_k)` (zero-based).
#[derive(Debug, Clone, PartialEq)]
pub struct TripleDefect {
    pub triple: [usize; 3],
    pub defect: PseudoEl3,
}

impl TripleDefect {
    /// Module indices whose component of the defect is nonzero.
    pub fn failing_components(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.defect.terms().keys().map(|(k, _)| *k).collect();
        ks.dedup();
        ks
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub rank: usize,
    pub failures: Vec<TripleDefect>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates the defect on every generator triple.
pub fn check_axiom(t: &ProductTable, axiom: Axiom) -> Result<AxiomReport> {
    let n = t.rank;
    let triples: Vec<[usize; 3]> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k]))).collect();
    let results: Vec<Result<Option<TripleDefect>>> = triples
        .par_iter()
        .map(|&[i, j, k]| {
            let e = |m| ModuleElement::basis(&t.alg, n, m);
            let d = defect(&e(i), &e(j), &e(k), t, axiom)?;
            Ok((!d.is_zero()).then_some(TripleDefect { triple: [i, j, k], defect: d }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(AxiomReport { axiom, rank: n, failures })
}

/// Component-wise shortcut used by the rank-one residual cross-checks.
pub fn defect_component(t: &ProductTable, triple: [usize; 3], axiom: Axiom, k: usize) -> Result<T3> {
    let e = |m| ModuleElement::basis(&t.alg, t.rank, m);
    Ok(defect(&e(triple[0]), &e(triple[1]), &e(triple[2]), t, axiom)?.component(k))
}
