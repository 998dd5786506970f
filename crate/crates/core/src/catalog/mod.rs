//! Classified pseudoalgebra structures of rank one and two.
//!
//! Entries are declarative templates stored in `data/catalog.json`. A template
//! maps each product `e_i ∗ e_j` to a list of `left ⊗ right` pairs of
//! expressions over the entry's parameters.

mod expr;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{DeltaVector, LieAlgebra};
use crate::pseudo::{Axiom, ProductTable};
use crate::rational::{rational_from_value, Rational};
use crate::tensor::T2;
use crate::uea::{MultiIndex, UEl, UElJson};

pub use expr::Evaluator;

const DATA: &str = include_str!("../../data/catalog.json");

/// Product template: `"ij"` → `"k"` → `[[left, right], …]` with 1-based indices.
pub type Products = BTreeMap<String, BTreeMap<String, Vec<[String; 2]>>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    /// An element of `δ`.
    Delta,
    /// A scalar.
    Scalar,
    /// An arbitrary element of `H`.
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    Nonzero,
    Equal,
    Commute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub label: String,
    pub kind: ConditionKind,
    pub args: Vec<String>,
    /// Standing assumption of the family rather than a constraint selecting a type.
    #[serde(default)]
    pub hypothesis: bool,
}

#[derive(Debug, Deserialize)]
struct GroupData {
    id: String,
    rank: usize,
    axioms: Vec<Axiom>,
    params: BTreeMap<String, ParamKind>,
    base: Products,
    conditions: Vec<Condition>,
    types: Vec<TypeData>,
}

#[derive(Debug, Deserialize)]
struct TypeData {
    #[serde(rename = "type")]
    label: Option<String>,
    products: Products,
    conditions: Vec<Condition>,
    #[serde(default)]
    params: BTreeMap<String, ParamKind>,
    #[serde(default)]
    alt_output: Option<Products>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformSpec {
    pub source: String,
    pub target: String,
    /// Rows are the new basis vectors `e'_i = Σ_j P_ij e_j`.
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    /// Target parameters as expressions in the source parameters.
    pub target_params: BTreeMap<String, String>,
    #[serde(default)]
    pub listed_target: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossCheck {
    pub source: String,
    pub target: String,
    pub target_params: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
struct CatalogData {
    groups: Vec<GroupData>,
    transforms: Vec<TransformSpec>,
    cross_checks: Vec<CrossCheck>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub group: String,
    pub type_label: Option<String>,
    pub rank: usize,
    pub axioms: Vec<Axiom>,
    pub params: BTreeMap<String, ParamKind>,
    pub products: Products,
    pub conditions: Vec<Condition>,
    /// Alternative template with the output placed on the other generator.
    pub alt_output: Option<Products>,
}

impl CatalogEntry {
    /// Conditions that select this type, as opposed to standing hypotheses.
    pub fn side_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.hypothesis)
    }
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    transforms: Vec<TransformSpec>,
    cross_checks: Vec<CrossCheck>,
}

fn merge(base: &Products, extra: &Products) -> Products {
    let mut out = base.clone();
    for (ij, row) in extra {
        let slot = out.entry(ij.clone()).or_default();
        for (k, terms) in row {
            slot.entry(k.clone()).or_default().extend(terms.iter().cloned());
        }
    }
    out
}

impl Catalog {
    /// The built-in catalog.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(DATA).expect("built-in catalog is well formed"))
    }

    fn parse(src: &str) -> Result<Catalog> {
        let data: CatalogData = serde_json::from_str(src)?;
        let mut entries = Vec::new();
        for g in data.groups {
            for t in g.types {
                let id = match &t.label {
                    Some(l) => format!("{}/{}", g.id, l),
                    None => g.id.clone(),
                };
                let mut params = g.params.clone();
                params.extend(t.params.clone());
                let mut conditions = g.conditions.clone();
                conditions.extend(t.conditions.iter().cloned());
                entries.push(CatalogEntry {
                    id,
                    group: g.id.clone(),
                    type_label: t.label.clone(),
                    rank: g.rank,
                    axioms: g.axioms.clone(),
                    params,
                    products: merge(&g.base, &t.products),
                    conditions,
                    alt_output: t.alt_output.as_ref().map(|p| merge(&g.base, p)),
                });
            }
        }
        Ok(Catalog { entries, transforms: data.transforms, cross_checks: data.cross_checks })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }

    pub fn group(&self, group: &str) -> impl Iterator<Item = &CatalogEntry> {
        let group = group.to_string();
        self.entries.iter().filter(move |e| e.group == group)
    }

    pub fn transforms(&self) -> &[TransformSpec] {
        &self.transforms
    }

    pub fn cross_checks(&self) -> &[CrossCheck] {
        &self.cross_checks
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Delta(DeltaVector),
    Scalar(Rational),
    H(UEl),
}

impl ParamValue {
    pub fn kind(&self) -> ParamKind {
        match self {
            ParamValue::Delta(_) => ParamKind::Delta,
            ParamValue::Scalar(_) => ParamKind::Scalar,
            ParamValue::H(_) => ParamKind::H,
        }
    }

    pub fn to_uel(&self, alg: &Arc<LieAlgebra>) -> Result<UEl> {
        match self {
            ParamValue::Delta(v) => UEl::from_delta(alg, v),
            ParamValue::Scalar(c) => Ok(UEl::scalar(alg, c.clone())),
            ParamValue::H(h) => Ok(h.clone()),
        }
    }

    /// Reads an element of `H` as a value of the requested kind.
    pub fn coerce(alg: &Arc<LieAlgebra>, kind: ParamKind, h: UEl) -> Result<Self> {
        match kind {
            ParamKind::H => Ok(ParamValue::H(h)),
            ParamKind::Scalar => h
                .as_scalar()
                .map(ParamValue::Scalar)
                .ok_or_else(|| Error::Malformed(format!("expected a scalar, got {h}"))),
            ParamKind::Delta => {
                let mut v = DeltaVector::zero(alg.dim());
                for (idx, c) in h.terms() {
                    match idx.exponents().iter().position(|&e| e == 1) {
                        Some(i) if idx.degree() == 1 => v.0[i] = c.clone(),
                        _ => return Err(Error::Malformed(format!("expected an element of the Lie algebra, got {h}"))),
                    }
                }
                Ok(ParamValue::Delta(v))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::rational::format_rational;
        match self {
            ParamValue::Delta(v) => serde_json::Value::Array(
                v.0.iter().map(|c| serde_json::Value::String(format_rational(c))).collect(),
            ),
            ParamValue::Scalar(c) => serde_json::Value::String(format_rational(c)),
            ParamValue::H(h) => serde_json::to_value(h.to_json()).expect("serializable"),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Environment binding parameters and the generators `d1, …, dN`.
pub fn environment(alg: &Arc<LieAlgebra>, params: &Params) -> Result<BTreeMap<String, UEl>> {
    let mut env = BTreeMap::new();
    for i in 0..alg.dim() {
        env.insert(format!("d{}", i + 1), UEl::generator(alg, i));
    }
    for (name, v) in params {
        env.insert(name.clone(), v.to_uel(alg)?);
    }
    Ok(env)
}

/// Parses a parameter file against the slots of `entry`.
///
/// Arrays are Lie algebra vectors, strings and numbers are scalars (or
/// expressions in `d1, …, dN` for `H`-valued slots), objects are `H` elements.
pub fn parse_params(alg: &Arc<LieAlgebra>, kinds: &BTreeMap<String, ParamKind>, value: &serde_json::Value) -> Result<Params> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("parameter file must be a JSON object".into()))?;
    let mut out = Params::new();
    for (name, kind) in kinds {
        let Some(v) = obj.get(name) else { continue };
        let parsed = match (kind, v) {
            (ParamKind::Delta, serde_json::Value::Array(xs)) => {
                let coords = xs.iter().map(rational_from_value).collect::<Result<Vec<_>>>()?;
                let d = DeltaVector(coords);
                alg.check_dim(&d)?;
                ParamValue::Delta(d)
            }
            (ParamKind::H, serde_json::Value::Object(_)) => {
                let j: UElJson = serde_json::from_value(v.clone())?;
                ParamValue::H(UEl::from_json(alg, &j)?)
            }
            (ParamKind::H, serde_json::Value::String(s)) => {
                let env = environment(alg, &Params::new())?;
                ParamValue::H(Evaluator::new(alg, &env).eval(s)?)
            }
            (ParamKind::H, serde_json::Value::Number(_)) => ParamValue::H(UEl::scalar(alg, rational_from_value(v)?)),
            (ParamKind::Scalar, serde_json::Value::String(_) | serde_json::Value::Number(_)) => {
                ParamValue::Scalar(rational_from_value(v)?)
            }
            _ => return Err(Error::Malformed(format!("parameter `{name}` has the wrong shape"))),
        };
        out.insert(name.clone(), parsed);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionResult {
    pub label: String,
    pub hypothesis: bool,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub table: ProductTable,
    pub conditions: Vec<ConditionResult>,
}

impl Instance {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

fn parse_index(s: &str, rank: usize) -> Result<usize> {
    let i: usize = s.parse().map_err(|_| Error::Malformed(format!("bad module index `{s}`")))?;
    if i == 0 || i > rank {
        return Err(Error::Malformed(format!("module index `{s}` out of range")));
    }
    Ok(i - 1)
}

fn build_table(alg: &Arc<LieAlgebra>, rank: usize, products: &Products, ev: &Evaluator) -> Result<ProductTable> {
    let mut table = ProductTable::zero(alg, rank);
    for (ij, row) in products {
        let mut cs = ij.chars().map(|c| parse_index(&c.to_string(), rank));
        let (i, j) = match (cs.next(), cs.next(), cs.next()) {
            (Some(i), Some(j), None) => (i?, j?),
            _ => return Err(Error::Malformed(format!("bad product key `{ij}`"))),
        };
        for (k, terms) in row {
            let k = parse_index(k, rank)?;
            let mut alpha = table.get(i, j, k).clone();
            for [l, r] in terms {
                alpha = alpha.try_add(&T2::pure([&ev.eval(l)?, &ev.eval(r)?]))?;
            }
            table.set(i, j, k, alpha)?;
        }
    }
    Ok(table)
}

fn evaluate_condition(alg: &Arc<LieAlgebra>, params: &Params, ev: &Evaluator, c: &Condition) -> Result<bool> {
    let arg = |n: usize| {
        c.args.get(n).ok_or_else(|| Error::Malformed(format!("condition `{}` is missing an argument", c.label)))
    };
    match c.kind {
        ConditionKind::Nonzero => Ok(!ev.eval(arg(0)?)?.is_zero()),
        ConditionKind::Equal => Ok(ev.eval(arg(0)?)? == ev.eval(arg(1)?)?),
        ConditionKind::Commute => {
            let (a, b) = (arg(0)?, arg(1)?);
            if let (Some(ParamValue::Delta(x)), Some(ParamValue::Delta(y))) = (params.get(a), params.get(b)) {
                return Ok(alg.bracket(x, y)?.is_zero());
            }
            let (x, y) = (ev.eval(a)?, ev.eval(b)?);
            Ok((&(&x * &y) - &(&y * &x)).is_zero())
        }
    }
}

fn check_params(entry: &CatalogEntry, params: &Params) -> Result<()> {
    for (name, kind) in &entry.params {
        match params.get(name) {
            None => return Err(Error::MissingParam(name.clone())),
            Some(v) if v.kind() != *kind => {
                return Err(Error::Malformed(format!("parameter `{name}` should be {kind:?}")))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

fn instantiate_products(entry: &CatalogEntry, products: &Products, alg: &Arc<LieAlgebra>, params: &Params) -> Result<Instance> {
    check_params(entry, params)?;
    let env = environment(alg, params)?;
    let ev = Evaluator::new(alg, &env);
    let table = build_table(alg, entry.rank, products, &ev)?;
    let conditions = entry
        .conditions
        .iter()
        .map(|c| {
            Ok(ConditionResult {
                label: c.label.clone(),
                hypothesis: c.hypothesis,
                holds: evaluate_condition(alg, params, &ev, c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance { id: entry.id.clone(), table, conditions })
}

/// Builds the entry's table; side conditions are reported, not enforced.
pub fn instantiate(entry: &CatalogEntry, alg: &Arc<LieAlgebra>, params: &Params) -> Result<Instance> {
    instantiate_products(entry, &entry.products, alg, params)
}

/// Builds the alternative table, if the entry records one.
pub fn instantiate_alt_output(entry: &CatalogEntry, alg: &Arc<LieAlgebra>, params: &Params) -> Result<Option<Instance>> {
    entry.alt_output.as_ref().map(|p| instantiate_products(entry, p, alg, params)).transpose()
}

/// Looks up `id` in the built-in catalog and instantiates it.
pub fn instantiate_id(id: &str, alg: &Arc<LieAlgebra>, params: &Params) -> Result<Instance> {
    instantiate(Catalog::builtin().entry(id)?, alg, params)
}

/// Current pseudoalgebra `H ⊗ A` of a finite-dimensional pre-Lie algebra `A`
/// with `e_i ∘ e_j = Σ_k m[i][j][k] e_k`.
pub fn current(alg: &Arc<LieAlgebra>, m: &[Vec<Vec<Rational>>]) -> Result<ProductTable> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Malformed("empty structure constants".into()));
    }
    for row in m {
        if row.len() != n || row.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("structure constants must be n×n×n".into()));
        }
    }
    let mul = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += xi * yj * &m[i][j][k];
                }
            }
        }
        out
    };
    let basis = |i: usize| -> Vec<Rational> { (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect() };
    let assoc = |a: &[Rational], b: &[Rational], c: &[Rational]| -> Vec<Rational> {
        let l = mul(&mul(a, b), c);
        let r = mul(a, &mul(b, c));
        l.iter().zip(&r).map(|(x, y)| x - y).collect()
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (ei, ej, ek) = (basis(i), basis(j), basis(k));
                if assoc(&ei, &ej, &ek) != assoc(&ej, &ei, &ek) {
                    return Err(Error::NotPreLie { i, j, k });
                }
            }
        }
    }
    let mut table = ProductTable::zero(alg, n);
    for (i, row) in m.iter().enumerate() {
        for (j, ks) in row.iter().enumerate() {
            for (k, c) in ks.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                table.set(i, j, k, T2::scalar(alg, c.clone()))?;
            }
        }
    }
    Ok(table)
}

/// Change of basis `e'_i = Σ_j P_ij e_j` over `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    p: Vec<Vec<UEl>>,
    pinv: Vec<Vec<UEl>>,
}

fn identity(alg: &Arc<LieAlgebra>, n: usize) -> Vec<Vec<UEl>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { UEl::one(alg) } else { UEl::zero(alg) }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<UEl>], b: &[Vec<UEl>], alg: &Arc<LieAlgebra>) -> Result<Vec<Vec<UEl>>> {
    let n = a.len();
    let mut out = vec![vec![UEl::zero(alg); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            for k in 0..n {
                *o = o.try_add(&a[i][k].try_mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

fn square(m: &[Vec<UEl>]) -> Result<usize> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed("basis change must be a non-empty square matrix".into()));
    }
    Ok(n)
}

/// Left inverse by Gauss-Jordan elimination with scalar pivots.
fn invert(alg: &Arc<LieAlgebra>, p: &[Vec<UEl>]) -> Result<Vec<Vec<UEl>>> {
    let n = square(p)?;
    let mut a: Vec<Vec<UEl>> = p.to_vec();
    let mut inv = identity(alg, n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col].as_scalar().is_some_and(|c| !c.is_zero()))
            .ok_or_else(|| Error::NotInvertible(format!("no invertible pivot in column {}", col + 1)))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let c = a[col][col].as_scalar().expect("scalar pivot");
        let cinv = Rational::one() / c;
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = x.scale(&cinv);
        }
        for r in (0..n).filter(|&r| r != col) {
            let f = a[r][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                a[r][j] = a[r][j].try_add(&-&f.try_mul(&a[col][j])?)?;
                inv[r][j] = inv[r][j].try_add(&-&f.try_mul(&inv[col][j])?)?;
            }
        }
    }
    Ok(inv)
}

impl BasisChange {
    /// Computes the inverse and checks it on both sides.
    pub fn new(alg: &Arc<LieAlgebra>, p: Vec<Vec<UEl>>) -> Result<Self> {
        let pinv = invert(alg, &p)?;
        BasisChange::with_inverse(alg, p, pinv)
    }

    pub fn with_inverse(alg: &Arc<LieAlgebra>, p: Vec<Vec<UEl>>, pinv: Vec<Vec<UEl>>) -> Result<Self> {
        let n = square(&p)?;
        if square(&pinv)? != n {
            return Err(Error::DimensionMismatch { expected: n, found: pinv.len() });
        }
        let id = identity(alg, n);
        if mat_mul(&p, &pinv, alg)? != id || mat_mul(&pinv, &p, alg)? != id {
            return Err(Error::NotInvertible("P·Pinv is not the identity".into()));
        }
        Ok(BasisChange { p, pinv })
    }

    pub fn identity(alg: &Arc<LieAlgebra>, n: usize) -> Self {
        BasisChange { p: identity(alg, n), pinv: identity(alg, n) }
    }

    pub fn p(&self) -> &[Vec<UEl>] {
        &self.p
    }

    pub fn pinv(&self) -> &[Vec<UEl>] {
        &self.pinv
    }

    pub fn rank(&self) -> usize {
        self.p.len()
    }

    /// Matrix entries are expressions in `env`.
    pub fn from_exprs(alg: &Arc<LieAlgebra>, ev: &Evaluator, rows: &[Vec<String>]) -> Result<Self> {
        let p = rows
            .iter()
            .map(|r| r.iter().map(|s| ev.eval(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        BasisChange::new(alg, p)
    }

    /// `{"P": [[h, …], …], "Pinv": …}` where each `h` is an `H` element or an
    /// expression in `d1, …, dN`.
    pub fn from_json(alg: &Arc<LieAlgebra>, value: &serde_json::Value) -> Result<Self> {
        let env = environment(alg, &Params::new())?;
        let ev = Evaluator::new(alg, &env);
        let read = |v: &serde_json::Value| -> Result<Vec<Vec<UEl>>> {
            let rows = v.as_array().ok_or_else(|| Error::Malformed("matrix must be an array of rows".into()))?;
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Malformed("matrix row must be an array".into()))?
                        .iter()
                        .map(|x| match x {
                            serde_json::Value::String(s) => ev.eval(s),
                            serde_json::Value::Number(_) => Ok(UEl::scalar(alg, rational_from_value(x)?)),
                            _ => UEl::from_json(alg, &serde_json::from_value(x.clone())?),
                        })
                        .collect()
                })
                .collect()
        };
        let p = read(value.get("P").ok_or_else(|| Error::Malformed("missing `P`".into()))?)?;
        match value.get("Pinv") {
            Some(v) => BasisChange::with_inverse(alg, p, read(v)?),
            None => BasisChange::new(alg, p),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |m: &[Vec<UEl>]| -> serde_json::Value {
            m.iter()
                .map(|r| serde_json::Value::Array(r.iter().map(|h| serde_json::to_value(h.to_json()).expect("serializable")).collect()))
                .collect::<Vec<_>>()
                .into()
        };
        serde_json::json!({ "P": enc(&self.p), "Pinv": enc(&self.pinv) })
    }
}

/// The table of the same structure in the basis `e'_i = Σ_j P_ij e_j`.
pub fn transform(t: &ProductTable, b: &BasisChange) -> Result<ProductTable> {
    let n = t.rank();
    if b.rank() != n {
        return Err(Error::RankMismatch { expected: n, found: b.rank() });
    }
    let alg = t.algebra();
    let deltas: Vec<Vec<T2>> = b.pinv.iter().map(|r| r.iter().map(UEl::coproduct).collect()).collect();
    let mut out = ProductTable::zero(alg, n);
    for i in 0..n {
        for j in 0..n {
            // Σ_c (Σ_{a,b} (P_ia ⊗ P_jb) α^c_ab) ⊗_H e_c
            let mut gamma = vec![T2::zero(alg); n];
            for a in (0..n).filter(|&a| !b.p[i][a].is_zero()) {
                for bb in (0..n).filter(|&bb| !b.p[j][bb].is_zero()) {
                    let coeff = T2::pure([&b.p[i][a], &b.p[j][bb]]);
                    for (c, g) in gamma.iter_mut().enumerate() {
                        let alpha = t.get(a, bb, c);
                        if !alpha.is_zero() {
                            *g = g.try_add(&coeff.try_mul(alpha)?)?;
                        }
                    }
                }
            }
            for d in 0..n {
                let mut acc = T2::zero(alg);
                for (g, row) in gamma.iter().zip(&deltas).filter(|(g, row)| !g.is_zero() && !row[d].is_zero()) {
                    acc = acc.try_add(&g.try_mul(&row[d])?)?;
                }
                out.set(i, j, d, acc)?;
            }
        }
    }
    Ok(out)
}

/// Exact equality of two tables over the same ambient algebra.
pub fn equivalent(a: &ProductTable, b: &ProductTable) -> Result<bool> {
    a.equivalent(b)
}

/// Evaluates target parameters given as expressions in the source parameters.
pub fn derive_params(
    alg: &Arc<LieAlgebra>,
    source: &Params,
    target: &CatalogEntry,
    exprs: &BTreeMap<String, String>,
) -> Result<Params> {
    let env = environment(alg, source)?;
    let ev = Evaluator::new(alg, &env);
    let mut out = Params::new();
    for (name, src) in exprs {
        let kind = *target.params.get(name).ok_or_else(|| Error::Malformed(format!("`{}` has no parameter `{name}`", target.id)))?;
        out.insert(name.clone(), ParamValue::coerce(alg, kind, ev.eval(src)?)?);
    }
    Ok(out)
}

/// Result of applying a catalogued basis change.
#[derive(Debug, Clone, Serialize)]
pub struct TransformOutcome {
    pub source: String,
    pub target: String,
    pub listed_target: Option<String>,
    /// The computed table equals the target entry's table.
    pub matches_target: bool,
    /// Every entry of the target's group whose table equals the computed one.
    pub matching_entries: Vec<String>,
}

/// Applies `spec` to the source entry instantiated at `params`.
pub fn apply_transform(spec: &TransformSpec, alg: &Arc<LieAlgebra>, params: &Params) -> Result<TransformOutcome> {
    let cat = Catalog::builtin();
    let source = instantiate_id(&spec.source, alg, params)?;
    let env = environment(alg, params)?;
    let ev = Evaluator::new(alg, &env);
    let b = BasisChange::from_exprs(alg, &ev, &spec.p)?;
    let moved = transform(&source.table, &b)?;
    let target = cat.entry(&spec.target)?;
    let tparams = derive_params(alg, params, target, &spec.target_params)?;
    let matches_target = instantiate(target, alg, &tparams)?.table == moved;
    let mut matching_entries = Vec::new();
    for e in cat.group(&target.group) {
        if e.params.keys().all(|k| tparams.contains_key(k)) && instantiate(e, alg, &tparams)?.table == moved {
            matching_entries.push(e.id.clone());
        }
    }
    Ok(TransformOutcome {
        source: spec.source.clone(),
        target: spec.target.clone(),
        listed_target: spec.listed_target.clone(),
        matches_target,
        matching_entries,
    })
}

/// Scalar grid used when sampling parameters.
pub fn scalar_grid() -> Vec<Rational> {
    use crate::rational::{frac, int};
    vec![int(-2), int(-1), frac(1, 2), int(1), int(3)]
}

/// Small Lie algebra vectors: multiples of the first basis vector, the second,
/// their sum, and the last.
pub fn delta_pool(alg: &LieAlgebra) -> Vec<DeltaVector> {
    use crate::rational::int;
    let n = alg.dim();
    let b = |i: usize| DeltaVector::basis(n, i);
    let mut out = vec![b(0), b(0).scale(&int(-1)), b(0).scale(&int(2))];
    if n > 1 {
        out.push(b(1));
        out.push(b(0).add(&b(1)).expect("same length"));
    }
    if n > 2 {
        out.push(b(n - 1));
    }
    out
}

/// Elements of `H` of degree at most two.
pub fn h_pool(alg: &Arc<LieAlgebra>) -> Vec<UEl> {
    let d1 = UEl::generator(alg, 0);
    let one = UEl::one(alg);
    let mut out = vec![one.clone(), d1.clone(), &d1 * &d1, &one + &d1];
    if alg.dim() > 1 {
        out.push(&d1 * &UEl::generator(alg, 1));
    }
    out
}

/// Cartesian product of the pools over the entry's parameter slots, in a fixed
/// order. `limit` caps the number of sets produced.
pub fn parameter_grid(entry: &CatalogEntry, alg: &Arc<LieAlgebra>, limit: usize) -> Vec<Params> {
    let pools: Vec<(String, Vec<ParamValue>)> = entry
        .params
        .iter()
        .map(|(name, kind)| {
            let pool = match kind {
                ParamKind::Scalar => scalar_grid().into_iter().map(ParamValue::Scalar).collect(),
                ParamKind::Delta => delta_pool(alg).into_iter().map(ParamValue::Delta).collect(),
                ParamKind::H => h_pool(alg).into_iter().map(ParamValue::H).collect(),
            };
            (name.clone(), pool)
        })
        .collect();
    let total: usize = pools.iter().map(|(_, p)| p.len()).product();
    let mut out = Vec::new();
    for mut idx in 0..total {
        if out.len() >= limit {
            break;
        }
        let mut params = Params::new();
        for (name, pool) in &pools {
            params.insert(name.clone(), pool[idx % pool.len()].clone());
            idx /= pool.len();
        }
        out.push(params);
    }
    out
}

/// Parameter sets from the grid on which every condition of `entry` holds.
/// Picks at most `limit` of them, spread evenly over the grid.
pub fn satisfying_params(entry: &CatalogEntry, alg: &Arc<LieAlgebra>, limit: usize) -> Result<Vec<Params>> {
    let mut ok = Vec::new();
    for p in parameter_grid(entry, alg, usize::MAX) {
        if instantiate(entry, alg, &p)?.conditions_hold() {
            ok.push(p);
        }
    }
    Ok(spread(ok, limit))
}

/// Parameter sets satisfying every hypothesis and every side condition except
/// the one labelled `violated`, which fails.
pub fn violating_params(entry: &CatalogEntry, alg: &Arc<LieAlgebra>, violated: &str, limit: usize) -> Result<Vec<Params>> {
    let mut out = Vec::new();
    for p in parameter_grid(entry, alg, usize::MAX) {
        let inst = instantiate(entry, alg, &p)?;
        if inst.conditions.iter().all(|c| c.holds != (c.label == violated)) {
            out.push(p);
        }
    }
    Ok(spread(out, limit))
}

fn spread<T>(items: Vec<T>, limit: usize) -> Vec<T> {
    if items.len() <= limit || limit == 0 {
        return if limit == 0 { Vec::new() } else { items };
    }
    let step = items.len() as f64 / limit as f64;
    let picks: Vec<usize> = (0..limit).map(|i| (i as f64 * step) as usize).collect();
    items.into_iter().enumerate().filter(|(i, _)| picks.contains(i)).map(|(_, x)| x).collect()
}

/// `MultiIndex` helper for tests and callers building `H` elements by exponent.
pub fn monomial(alg: &Arc<LieAlgebra>, exps: &[u32]) -> UEl {
    UEl::monomial(alg, MultiIndex::new(exps.to_vec()), Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo::check_axiom;
    use crate::rational::{frac, int};

    fn scalars(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(n, v)| (n.to_string(), ParamValue::Scalar(int(*v)))).collect()
    }

    #[test]
    fn builtin_catalog_parses() {
        let cat = Catalog::builtin();
        assert!(cat.entry("thm3.6/11").is_ok());
        assert!(cat.entry("cor3.12/iv").is_ok());
        assert!(cat.entry("prop2.2").is_ok());
        assert_eq!(cat.entry("thm9.9/1").unwrap_err(), Error::UnknownEntry("thm9.9/1".into()));
        for t in cat.transforms() {
            assert!(cat.entry(&t.source).is_ok(), "{}", t.source);
            assert!(cat.entry(&t.target).is_ok(), "{}", t.target);
        }
    }

    #[test]
    fn thm3_11_type4_table() {
        let alg = LieAlgebra::abelian(1);
        let inst = instantiate_id("thm3.11/4", &alg, &scalars(&[("t1", 1), ("t2", 1)])).unwrap();
        let t = &inst.table;
        assert_eq!(t.get(0, 1, 1), &T2::scalar(&alg, int(2)));
        assert!(t.get(0, 1, 0).is_zero());
        assert_eq!(t.get(1, 0, 0), &T2::scalar(&alg, frac(1, 2)));
        assert_eq!(t.get(1, 0, 1), &T2::one(&alg));
    }

    #[test]
    fn thm3_8_type3_table() {
        let alg = LieAlgebra::abelian(1);
        let h = monomial(&alg, &[2]).scale(&int(2));
        let params: Params = [("h".to_string(), ParamValue::H(h.clone()))].into();
        let inst = instantiate_id("thm3.8/3", &alg, &params).unwrap();
        assert_eq!(inst.table.get(0, 1, 1), &T2::pure([&h, &UEl::one(&alg)]));
        let nonzero = (0..2)
            .flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| !inst.table.get(i, j, k).is_zero())
            .count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn missing_param_is_reported() {
        let alg = LieAlgebra::abelian(2);
        let err = instantiate_id("thm3.11/2", &alg, &scalars(&[("t1", 1)])).unwrap_err();
        assert_eq!(err, Error::MissingParam("t2".into()));
    }

    #[test]
    fn current_algebras() {
        let alg = LieAlgebra::abelian(1);
        let t = current(&alg, &[vec![vec![int(1)]]]).unwrap();
        assert_eq!(t.get(0, 0, 0), &T2::one(&alg));
        assert!(check_axiom(&t, Axiom::LeftPreLie).unwrap().passed());
        assert!(check_axiom(&t, Axiom::Assoc).unwrap().passed());
        let z = current(&alg, &[vec![vec![int(0)]]]).unwrap();
        assert_eq!(z, ProductTable::zero(&alg, 1));

        let mut m = vec![vec![vec![int(0); 2]; 2]; 2];
        m[1][0][0] = int(1);
        m[1][1][1] = int(1);
        let t = current(&alg, &m).unwrap();
        let expected = instantiate_id("cor3.12/ii", &alg, &Params::new()).unwrap().table;
        assert_eq!(t, expected);

        let mut bad = vec![vec![vec![int(0); 2]; 2]; 2];
        bad[0][1][0] = int(1);
        bad[1][1][0] = int(1);
        bad[0][0][1] = int(1);
        assert!(matches!(current(&alg, &bad), Err(Error::NotPreLie { .. })));
    }

    #[test]
    fn identity_and_inverse() {
        let alg = LieAlgebra::abelian(2);
        let inst = instantiate_id("thm3.11/8", &alg, &scalars(&[("t1", 2), ("t2", 3)])).unwrap();
        let id = BasisChange::identity(&alg, 2);
        assert_eq!(transform(&inst.table, &id).unwrap(), inst.table);
        let d1 = UEl::generator(&alg, 0);
        let p = vec![vec![UEl::one(&alg), UEl::zero(&alg)], vec![d1.clone(), UEl::one(&alg)]];
        let b = BasisChange::new(&alg, p).unwrap();
        assert_eq!(b.pinv()[1][0], -&d1);
        let singular = vec![vec![d1.clone(), UEl::zero(&alg)], vec![UEl::zero(&alg), UEl::one(&alg)]];
        assert!(matches!(BasisChange::new(&alg, singular), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn thm3_11_type2_reduces_to_cor3_12_ii() {
        let alg = LieAlgebra::abelian(1);
        let params = scalars(&[("t1", 2), ("t2", -1)]);
        let spec = Catalog::builtin().transforms().iter().find(|t| t.source == "thm3.11/2").unwrap();
        let out = apply_transform(spec, &alg, &params).unwrap();
        assert!(out.matches_target);
    }

    #[test]
    fn distinct_types_are_not_equivalent() {
        let alg = LieAlgebra::abelian(2);
        let mut params = scalars(&[("t1", 1), ("t2", 1)]);
        let s = ParamValue::Delta(DeltaVector::from_ints(&[1, 0]));
        params.insert("s1".into(), s.clone());
        params.insert("s2".into(), s);
        let a = instantiate_id("thm3.6/2", &alg, &params).unwrap().table;
        let b = instantiate_id("thm3.6/4", &alg, &params).unwrap().table;
        assert!(!equivalent(&a, &b).unwrap());
        assert!(equivalent(&a, &a).unwrap());
    }
}
