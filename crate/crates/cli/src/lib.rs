//! Command-line front end. [`run`] is the whole program minus process I/O.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pseudoalg::catalog::{self, BasisChange, Catalog, ParamKind, Params};
use pseudoalg::lie::{LieAlgebraJson, DEGREE_CAP_VAR};
use pseudoalg::pseudo::{AxiomReport, ProductTableJson};
use pseudoalg::rational::{parse_rational, rational_from_value};
use pseudoalg::solver::{linear_nullspace, EquationId, EquationParams, Label, NullspaceReport};
use pseudoalg::verify::{run_suite, FailingTriple, Suite};
use pseudoalg::{check_axiom, Axiom, LieAlgebra, ProductTable};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write `{path}`: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("`{path}` is not valid JSON for this command: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("invalid value for {flag}: {reason}")]
    Flag { flag: &'static str, reason: String },
    #[error(transparent)]
    Core(#[from] pseudoalg::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Read { .. } => "read",
            CliError::Write { .. } => "write",
            CliError::Json { .. } => "json",
            CliError::Flag { .. } => "flag",
            CliError::Core(e) => e.kind(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a process would print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "pseudoalg", version, about = "Exact checks for pseudoalgebras over U(δ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check axioms on a product table.
    Check(CheckArgs),
    /// Instantiate a catalog entry.
    Catalog(CatalogArgs),
    /// Apply a change of basis to a product table.
    Transform(TransformArgs),
    /// Bounded-degree nullspace of a linear equation.
    Solve(SolveArgs),
    /// Run the whole classification suite.
    VerifyClassification(VerifyArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, required_unless_present = "all")]
    axiom: Vec<String>,
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[arg(long)]
    entry: String,
    /// A preset name or a JSON file.
    #[arg(long, default_value = "abelian:2")]
    lie: String,
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    basis: PathBuf,
    #[arg(long)]
    expect: Option<PathBuf>,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    equation: String,
    #[arg(long, default_value = "abelian:1")]
    lie: String,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    degree: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "quick")]
    suite: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    timings: bool,
}

/// Runs the program on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    if let Err(e) = check_env() {
        return failure(e);
    }
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Catalog(a) => catalog_cmd(a),
        Command::Transform(a) => transform(a),
        Command::Solve(a) => solve(a),
        Command::VerifyClassification(a) => verify(a),
    };
    match result {
        Ok((passed, stdout)) => Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAILED },
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: pretty(&body) + "\n" }
}

fn check_env() -> CliResult<()> {
    match std::env::var(DEGREE_CAP_VAR) {
        Ok(v) if v.trim().parse::<usize>().is_err() => Err(CliError::Flag {
            flag: DEGREE_CAP_VAR,
            reason: format!("`{v}` is not a non-negative integer"),
        }),
        _ => Ok(()),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> CliResult<()> {
    std::fs::write(path, pretty(v) + "\n").map_err(|source| CliError::Write { path: path.into(), source })
}

fn load_table(path: &Path) -> CliResult<ProductTable> {
    let json: ProductTableJson = read_json(path)?;
    Ok(ProductTable::from_json(&json)?)
}

fn load_lie(spec: &str) -> CliResult<Arc<LieAlgebra>> {
    let path = Path::new(spec);
    if path.is_file() {
        let json: LieAlgebraJson = read_json(path)?;
        return Ok(Arc::new(LieAlgebra::from_json(&json)?));
    }
    Ok(LieAlgebra::preset(spec)?)
}

fn parse_axioms(names: &[String], all: bool) -> CliResult<Vec<Axiom>> {
    if all {
        return Ok(Axiom::ALL.to_vec());
    }
    let mut out = Vec::new();
    for n in names {
        let ax: Axiom = n.parse()?;
        if !out.contains(&ax) {
            out.push(ax);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct AxiomRecord {
    axiom: Axiom,
    status: &'static str,
    failing: Vec<FailingTriple>,
}

fn axiom_records(table: &ProductTable, axioms: &[Axiom]) -> CliResult<(bool, Vec<AxiomRecord>)> {
    let mut all = true;
    let mut out = Vec::new();
    for ax in axioms {
        let r: AxiomReport = check_axiom(table, *ax)?;
        all &= r.passed();
        out.push(AxiomRecord {
            axiom: *ax,
            status: if r.passed() { "pass" } else { "fail" },
            failing: FailingTriple::from_report(&r),
        });
    }
    Ok((all, out))
}

fn check(a: CheckArgs) -> CliResult<(bool, String)> {
    let table = load_table(&a.input)?;
    let axioms = parse_axioms(&a.axiom, a.all)?;
    let (passed, checks) = axiom_records(&table, &axioms)?;
    let report = json!({
        "command": "check",
        "input": a.input.display().to_string(),
        "rank": table.rank(),
        "checks": checks,
        "passed": passed,
    });
    Ok((passed, pretty(&report)))
}

fn read_params(path: Option<&Path>) -> CliResult<Value> {
    match path {
        Some(p) => read_json(p),
        None => Ok(json!({})),
    }
}

fn current_table(alg: &Arc<LieAlgebra>, params: &Value) -> CliResult<ProductTable> {
    let bad = |reason: &str| CliError::Flag { flag: "--params", reason: reason.to_string() };
    let m = params.get("m").and_then(Value::as_array).ok_or_else(|| bad("`cur` needs a cube `m`"))?;
    let mut cube = Vec::new();
    for row in m {
        let row = row.as_array().ok_or_else(|| bad("`m` must be a cube of numbers"))?;
        let mut out_row = Vec::new();
        for cell in row {
            let cell = cell.as_array().ok_or_else(|| bad("`m` must be a cube of numbers"))?;
            out_row.push(cell.iter().map(rational_from_value).collect::<Result<Vec<_>, _>>()?);
        }
        cube.push(out_row);
    }
    Ok(catalog::current(alg, &cube)?)
}

fn catalog_cmd(a: CatalogArgs) -> CliResult<(bool, String)> {
    let alg = load_lie(&a.lie)?;
    let raw = read_params(a.params.as_deref())?;
    let (table, axioms, conditions, params) = if a.entry == "cur" {
        let table = current_table(&alg, &raw)?;
        (table, vec![Axiom::LeftPreLie], Vec::new(), raw.clone())
    } else {
        let entry = Catalog::builtin().entry(&a.entry)?;
        let params: Params = catalog::parse_params(&alg, &entry.params, &raw)?;
        let inst = catalog::instantiate(entry, &alg, &params)?;
        let shown = Value::Object(params.iter().map(|(k, v)| (k.clone(), v.to_json())).collect());
        // associative tables are also checked for both pre-Lie identities
        let axioms = if entry.axioms.contains(&Axiom::Assoc) { Axiom::ALL.to_vec() } else { entry.axioms.clone() };
        (inst.table, axioms, inst.conditions, shown)
    };
    let conditions_hold = conditions.iter().all(|c| c.holds);
    if let Some(path) = &a.emit {
        write_json(path, &table.to_json())?;
    }
    let (axioms_pass, checks) = if a.verify { axiom_records(&table, &axioms)? } else { (true, Vec::new()) };
    let passed = conditions_hold && axioms_pass;
    let report = json!({
        "command": "catalog",
        "entry": a.entry,
        "lie": table.algebra().name().unwrap_or(&a.lie),
        "params": params,
        "conditions": conditions,
        "table": table.to_json(),
        "checks": checks,
        "passed": passed,
    });
    Ok((passed, pretty(&report)))
}

fn transform(a: TransformArgs) -> CliResult<(bool, String)> {
    let table = load_table(&a.input)?;
    let basis_json: Value = read_json(&a.basis)?;
    let basis = BasisChange::from_json(table.algebra(), &basis_json)?;
    let out = catalog::transform(&table, &basis)?;
    if let Some(path) = &a.emit {
        write_json(path, &out.to_json())?;
    }
    let matches = match &a.expect {
        Some(path) => Some(catalog::equivalent(&out, &load_table(path)?)?),
        None => None,
    };
    let report = json!({
        "command": "transform",
        "input": a.input.display().to_string(),
        "basis": basis.to_json(),
        "table": out.to_json(),
        "matches_expected": matches,
        "passed": matches.unwrap_or(true),
    });
    Ok((matches.unwrap_or(true), pretty(&report)))
}

fn scalar_flag(flag: &'static str, v: &Option<String>) -> CliResult<Option<pseudoalg::Rational>> {
    v.as_deref()
        .map(|s| parse_rational(s).map_err(|e| CliError::Flag { flag, reason: e.to_string() }))
        .transpose()
}

fn solve(a: SolveArgs) -> CliResult<(bool, String)> {
    let label: Label = a.equation.parse()?;
    let alg = load_lie(&a.lie)?;
    let s = match &a.s {
        Some(text) => {
            let v: Value = serde_json::from_str(text)
                .map_err(|e| CliError::Flag { flag: "--s", reason: e.to_string() })?;
            let kinds = BTreeMap::from([("s".to_string(), ParamKind::Delta)]);
            match catalog::parse_params(&alg, &kinds, &json!({ "s": v }))?.remove("s") {
                Some(catalog::ParamValue::Delta(d)) => Some(d),
                _ => return Err(CliError::Flag { flag: "--s", reason: "expected a JSON array".into() }),
            }
        }
        None => None,
    };
    let params = EquationParams {
        s,
        t: scalar_flag("--t", &a.t)?,
        l: scalar_flag("--l", &a.l)?,
        k: scalar_flag("--k", &a.k)?,
    };
    let id = EquationId::new(label, params);
    let basis = linear_nullspace(&id, &alg, a.degree)?;
    let report = NullspaceReport::new(label.name(), a.degree, &basis);
    if let Some(path) = &a.out {
        write_json(path, &report)?;
    }
    Ok((true, pretty(&report)))
}

fn verify(a: VerifyArgs) -> CliResult<(bool, String)> {
    let suite: Suite = a.suite.parse().map_err(|_| CliError::Flag {
        flag: "--suite",
        reason: format!("expected `quick` or `full`, got `{}`", a.suite),
    })?;
    let started = Instant::now();
    let report = run_suite(suite)?;
    let text = if a.json {
        let mut v = serde_json::to_value(&report).expect("reports serialize");
        if a.timings {
            v["timings_ms"] = json!({
                "total": started.elapsed().as_millis() as u64,
                "criteria": report.criteria.iter().map(|c| c.elapsed.as_millis() as u64).collect::<Vec<_>>(),
            });
        }
        pretty(&v)
    } else {
        let mut t = report.render_text(a.timings);
        if a.timings {
            t.push_str(&format!("total {:.2?}\n", started.elapsed()));
        }
        t
    };
    Ok((report.passed, text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_subcommand_is_invalid() {
        let o = run(["pseudoalg", "frobnicate"]);
        assert_eq!(o.code, EXIT_INVALID);
    }

    #[test]
    fn help_is_success() {
        let o = run(["pseudoalg", "--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("verify-classification"));
    }

    #[test]
    fn unknown_entry_is_structured() {
        let o = run(["pseudoalg", "catalog", "--entry", "thm9.9/1"]);
        assert_eq!(o.code, EXIT_INVALID);
        let v: Value = serde_json::from_str(&o.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "unknown_entry");
    }

    #[test]
    fn bad_suite_name() {
        let o = run(["pseudoalg", "verify-classification", "--suite", "slow"]);
        assert_eq!(o.code, EXIT_INVALID);
    }
}
