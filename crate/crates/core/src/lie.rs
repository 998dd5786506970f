//! Finite-dimensional Lie algebras given by structure constants.
//!
//! `c[i][j][k]` is the coefficient of `∂_k` in `[∂_i, ∂_j]`. Indices are
//! zero-based in code and JSON; documentation uses the one-based `∂_1 … ∂_N`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational, RationalJson};
use crate::uea::StraighteningCache;

pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Environment variable overriding [`DEFAULT_DEGREE_CAP`].
pub const DEGREE_CAP_VAR: &str = "PSEUDOALG_MAX_DEGREE";

/// The cap given to newly built algebras.
pub fn default_degree_cap() -> usize {
    std::env::var(DEGREE_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

pub struct LieAlgebra {
    dim: usize,
    consts: Vec<Rational>,
    // sparse [∂_i, ∂_j] for each ordered pair, indexed by i * dim + j
    brackets: Vec<Vec<(usize, Rational)>>,
    name: Option<String>,
    degree_cap: usize,
    pub(crate) cache: StraighteningCache,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rational>>>, name: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("Lie algebra dimension must be positive".into()));
        }
        if c.len() != dim || c.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) {
            return Err(Error::Malformed(format!(
                "structure constants must have shape {dim}x{dim}x{dim}"
            )));
        }
        let mut consts = Vec::with_capacity(dim * dim * dim);
        for row in c {
            for v in row {
                consts.extend(v);
            }
        }
        Self::from_flat(dim, consts, name)
    }

    fn from_flat(dim: usize, consts: Vec<Rational>, name: Option<String>) -> Result<Self> {
        let at = |i: usize, j: usize, k: usize| &consts[(i * dim + j) * dim + k];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if *at(i, j, k) != -at(j, i, k).clone() {
                        return Err(Error::AntisymmetryViolation { i, j, k });
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for l in 0..dim {
                    for k in 0..dim {
                        let mut sum = Rational::zero();
                        for m in 0..dim {
                            sum += at(i, j, m) * at(m, l, k);
                            sum += at(j, l, m) * at(m, i, k);
                            sum += at(l, i, m) * at(m, j, k);
                        }
                        if !sum.is_zero() {
                            return Err(Error::JacobiViolation { i, j, l, k });
                        }
                    }
                }
            }
        }
        let brackets = (0..dim * dim)
            .map(|p| {
                (0..dim)
                    .filter_map(|k| {
                        let v = &consts[p * dim + k];
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra {
            dim,
            consts,
            brackets,
            name,
            degree_cap: default_degree_cap(),
            cache: StraighteningCache::default(),
        })
    }

    fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)], name: &str) -> Self {
        let mut consts = vec![Rational::zero(); dim * dim * dim];
        for (i, j, k, v) in entries {
            consts[(i * dim + j) * dim + k] = v.clone();
            consts[(j * dim + i) * dim + k] = -v.clone();
        }
        Self::from_flat(dim, consts, Some(name.to_string())).expect("preset is a Lie algebra")
    }

    pub fn abelian(dim: usize) -> Arc<Self> {
        Arc::new(Self::from_entries(dim, &[], &format!("abelian({dim})")))
    }

    /// `[∂_1, ∂_2] = ∂_3`, all other brackets zero.
    pub fn heisenberg() -> Arc<Self> {
        Arc::new(Self::from_entries(3, &[(0, 1, 2, int(1))], "heisenberg"))
    }

    /// Basis `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Arc<Self> {
        Arc::new(Self::from_entries(
            3,
            &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, int(1))],
            "sl2",
        ))
    }

    /// `abelian`, `abelian:N`, `heisenberg` or `sl2`.
    pub fn preset(name: &str) -> Result<Arc<Self>> {
        match name {
            "heisenberg" => Ok(Self::heisenberg()),
            "sl2" => Ok(Self::sl2()),
            "abelian" => Ok(Self::abelian(2)),
            _ => match name.strip_prefix("abelian:").map(str::parse::<usize>) {
                Some(Ok(n)) if n > 0 => Ok(Self::abelian(n)),
                _ => Err(Error::Malformed(format!("unknown Lie algebra preset `{name}`"))),
            },
        }
    }

    pub fn presets() -> Vec<Arc<Self>> {
        vec![Self::abelian(1), Self::abelian(2), Self::heisenberg(), Self::sl2()]
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero terms of `[∂_i, ∂_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i * self.dim + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(Vec::is_empty)
    }

    pub fn bracket(&self, x: &DeltaVector, y: &DeltaVector) -> Result<DeltaVector> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.0.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.0.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, c) in self.basis_bracket(i, j) {
                    out[*k] += xi * yj * c;
                }
            }
        }
        Ok(DeltaVector(out))
    }

    pub fn check_dim(&self, x: &DeltaVector) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    pub fn basis_vector(&self, i: usize) -> DeltaVector {
        DeltaVector::basis(self.dim, i)
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        let mut bracket = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in self.basis_bracket(i, j) {
                    let r = RationalJson::encode(v);
                    bracket.push(BracketEntry { i, j, k: *k, num: r.num, den: r.den });
                }
            }
        }
        LieAlgebraJson { dim: self.dim, bracket, name: self.name.clone() }
    }

    pub fn from_json(json: &LieAlgebraJson) -> Result<Self> {
        let dim = json.dim;
        if dim == 0 {
            return Err(Error::Malformed("Lie algebra dimension must be positive".into()));
        }
        let mut consts = vec![Rational::zero(); dim * dim * dim];
        for e in &json.bracket {
            if e.i >= dim || e.j >= dim || e.k >= dim {
                return Err(Error::Malformed(format!(
                    "bracket index ({}, {}, {}) out of range for dim {dim}",
                    e.i, e.j, e.k
                )));
            }
            let v = RationalJson { num: e.num.clone(), den: e.den.clone() }.decode()?;
            consts[(e.i * dim + e.j) * dim + e.k] += v;
        }
        Self::from_flat(dim, consts, json.name.clone())
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.consts == other.consts
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("dim", &self.dim)
            .field("name", &self.name)
            .finish()
    }
}

/// Same algebra, either by pointer or by structure constants.
pub fn same_ambient(a: &Arc<LieAlgebra>, b: &Arc<LieAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub num: String,
    #[serde(default = "one")]
    pub den: String,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// An element of δ in the basis `∂_1 … ∂_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector(pub Vec<Rational>);

impl DeltaVector {
    pub fn zero(dim: usize) -> Self {
        DeltaVector(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = int(1);
        v
    }

    pub fn from_ints(v: &[i64]) -> Self {
        DeltaVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DeltaVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(DeltaVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `Some(c)` with `self = c * other`, `c != 0`, when both are nonzero and parallel.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.len() != other.len() || self.is_zero() || other.is_zero() {
            return None;
        }
        let pivot = other.0.iter().position(|x| !x.is_zero())?;
        let c = &self.0[pivot] / &other.0[pivot];
        (other.scale(&c) == *self).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn zeros(n: usize) -> Vec<Vec<Vec<Rational>>> {
        vec![vec![vec![Rational::zero(); n]; n]; n]
    }

    #[test]
    fn abelian_and_heisenberg_validate() {
        assert!(LieAlgebra::new(2, zeros(2), None).is_ok());
        let mut c = zeros(3);
        c[0][1][2] = int(1);
        c[1][0][2] = int(-1);
        assert!(LieAlgebra::new(3, c, Some("h".into())).is_ok());
    }

    #[test]
    fn antisymmetry_violation_reports_first_index() {
        let mut c = zeros(2);
        c[0][1][0] = int(1);
        assert_eq!(
            LieAlgebra::new(2, c, None).unwrap_err(),
            Error::AntisymmetryViolation { i: 0, j: 1, k: 0 }
        );
    }

    #[test]
    fn jacobi_violation_is_detected() {
        // [x,y]=x, [x,z]=y, [y,z]=0 is antisymmetric but not Jacobi.
        let mut c = zeros(3);
        c[0][1][0] = int(1);
        c[1][0][0] = int(-1);
        c[0][2][1] = int(1);
        c[2][0][1] = int(-1);
        assert!(matches!(LieAlgebra::new(3, c, None), Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn bracket_examples() {
        let ab = LieAlgebra::abelian(2);
        let x = DeltaVector::from_ints(&[1, 0]);
        let y = DeltaVector::from_ints(&[0, 1]);
        assert!(ab.bracket(&x, &y).unwrap().is_zero());

        let h = LieAlgebra::heisenberg();
        let d1 = h.basis_vector(0);
        let d2 = h.basis_vector(1);
        assert_eq!(h.bracket(&d1, &d2).unwrap(), h.basis_vector(2));
        let s = d1.add(&d2).unwrap();
        assert!(h.bracket(&s, &s).unwrap().is_zero());
        assert!(matches!(
            h.bracket(&x, &d1),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn json_round_trip_preserves_constants() {
        let sl2 = LieAlgebra::sl2();
        let back = LieAlgebra::from_json(&sl2.to_json()).unwrap();
        assert_eq!(*sl2, back);
    }

    #[test]
    fn ratio_detects_parallel_vectors() {
        let a = DeltaVector::from_ints(&[2, 4]);
        let b = DeltaVector::from_ints(&[1, 2]);
        assert_eq!(a.ratio_to(&b), Some(int(2)));
        assert_eq!(b.ratio_to(&a), Some(frac(1, 2)));
        assert_eq!(a.ratio_to(&DeltaVector::from_ints(&[1, 0])), None);
    }

    fn small_vec(n: usize) -> impl Strategy<Value = DeltaVector> {
        prop::collection::vec((-5i64..=5, 1i64..=3), n)
            .prop_map(|v| DeltaVector(v.into_iter().map(|(a, b)| frac(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn bracket_is_alternating(x in small_vec(3)) {
            for alg in [LieAlgebra::heisenberg(), LieAlgebra::sl2()] {
                prop_assert!(alg.bracket(&x, &x).unwrap().is_zero());
            }
        }

        #[test]
        fn bracket_is_bilinear(x in small_vec(3), y in small_vec(3), z in small_vec(3), a in -3i64..=3, b in -3i64..=3) {
            let alg = LieAlgebra::sl2();
            let lhs = alg.bracket(&x.scale(&int(a)).add(&y.scale(&int(b))).unwrap(), &z).unwrap();
            let rhs = alg.bracket(&x, &z).unwrap().scale(&int(a))
                .add(&alg.bracket(&y, &z).unwrap().scale(&int(b))).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
