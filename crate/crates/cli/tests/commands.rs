use std::path::PathBuf;

use pseudoalg_cli::{run, EXIT_FAILED, EXIT_INVALID, EXIT_OK};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> pseudoalg_cli::Outcome {
    run(std::iter::once("pseudoalg").chain(args.iter().copied()))
}

fn stdout_json(o: &pseudoalg_cli::Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn zero_table_passes_everything() {
    let o = cli(&["check", "--input", &fixture("zero_rank2.json"), "--all"]);
    assert_eq!(o.code, EXIT_OK);
    let v = stdout_json(&o);
    let statuses: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["pass", "pass", "pass"]);
}

#[test]
fn failing_check_exits_one_with_triples() {
    let o = cli(&["check", "--input", &fixture("rank1_degree2.json"), "--axiom", "left-prelie"]);
    assert_eq!(o.code, EXIT_FAILED);
    let v = stdout_json(&o);
    assert_eq!(v["checks"][0]["failing"][0]["triple"], serde_json::json!([1, 1, 1]));
}

#[test]
fn associative_entry_verifies_all_axioms() {
    let o = cli(&["catalog", "--entry", "thm4.4/2", "--params", &fixture("t_one.json"), "--verify"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v = stdout_json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn emitted_table_matches_golden() {
    let dir = std::env::temp_dir().join(format!("pseudoalg-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("table.json");
    let o = cli(&["catalog", "--entry", "thm4.4/2", "--params", &fixture("t_one.json"), "--emit", out.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    let produced = std::fs::read_to_string(&out).unwrap();
    let golden = std::fs::read_to_string(fixture("thm4_4_2.json")).unwrap();
    assert_eq!(produced, golden);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_byte_identical() {
    let args = ["catalog", "--entry", "thm3.6/3", "--lie", "heisenberg", "--params", &fixture("thm3_6_3.json"), "--verify"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a, b);
}

#[test]
fn violated_condition_exits_one() {
    let o = cli(&["catalog", "--entry", "thm3.6/3", "--lie", "heisenberg", "--params", &fixture("thm3_6_3.json"), "--verify"]);
    assert_eq!(o.code, EXIT_FAILED);
    let v = stdout_json(&o);
    let commute = v["conditions"].as_array().unwrap().iter().find(|c| c["label"] == "[s1, s2] = 0").unwrap();
    assert_eq!(commute["holds"], false);
}

#[test]
fn current_algebra_entry() {
    let o = cli(&["catalog", "--entry", "cur", "--params", &fixture("cur_m.json"), "--verify"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let bad = cli(&["catalog", "--entry", "cur", "--params", &fixture("cur_not_prelie.json")]);
    assert_eq!(bad.code, EXIT_INVALID);
    assert!(bad.stderr.contains("not_pre_lie"));
}

#[test]
fn transform_reaches_expected_table() {
    let o = cli(&[
        "transform",
        "--input",
        &fixture("thm3_11_2.json"),
        "--basis",
        &fixture("basis_thm3_11_2.json"),
        "--expect",
        &fixture("cor3_12_ii.json"),
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(stdout_json(&o)["matches_expected"], true);
    let miss = cli(&[
        "transform",
        "--input",
        &fixture("thm3_11_2.json"),
        "--basis",
        &fixture("basis_thm3_11_2.json"),
        "--expect",
        &fixture("thm3_11_2.json"),
    ]);
    assert_eq!(miss.code, EXIT_FAILED);
}

#[test]
fn singular_basis_is_invalid_input() {
    let o = cli(&["transform", "--input", &fixture("thm3_11_2.json"), "--basis", &fixture("basis_singular.json")]);
    assert_eq!(o.code, EXIT_INVALID);
    let v: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "not_invertible");
}

#[test]
fn solve_writes_basis() {
    let dir = std::env::temp_dir().join(format!("pseudoalg-solve-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("basis.json");
    let o = cli(&[
        "solve", "--equation", "eq3.8", "--lie", "abelian:1", "--s", "[1]", "--t", "1/2", "--degree", "3", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["dimension"], 4);
    assert_eq!(written, stdout_json(&o));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn solve_errors_are_structured() {
    let cases: [(&[&str], &str); 4] = [
        (&["solve", "--equation", "eq3.8", "--s", "[1]", "--degree", "2"], "missing_param"),
        (&["solve", "--equation", "eq9.9", "--degree", "2"], "unknown_label"),
        (&["solve", "--equation", "eq3.8", "--s", "[1]", "--t", "1", "--degree", "-1"], "empty_basis_domain"),
        (&["solve", "--equation", "eq3.8", "--s", "[1, 2]", "--t", "1", "--degree", "1"], "dimension_mismatch"),
    ];
    for (args, kind) in cases {
        let o = cli(args);
        assert_eq!(o.code, EXIT_INVALID, "{args:?}");
        let v: Value = serde_json::from_str(&o.stderr).unwrap();
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
    }
}

#[test]
fn malformed_inputs_exit_two() {
    assert_eq!(cli(&["check", "--input", "/nonexistent.json", "--all"]).code, EXIT_INVALID);
    assert_eq!(cli(&["check", "--input", &fixture("t_one.json"), "--all"]).code, EXIT_INVALID);
    assert_eq!(cli(&["check", "--input", &fixture("zero_rank2.json"), "--axiom", "jordan"]).code, EXIT_INVALID);
    assert_eq!(cli(&["catalog", "--entry", "thm3.6/3", "--lie", "octonions"]).code, EXIT_INVALID);
    assert_eq!(cli(&["catalog", "--entry", "thm3.6/3"]).code, EXIT_INVALID);
}

#[test]
fn quick_suite_json_is_deterministic() {
    let a = cli(&["verify-classification", "--suite", "quick", "--json"]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
    assert!(v.get("timings_ms").is_none());
    let b = cli(&["verify-classification", "--suite", "quick", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
