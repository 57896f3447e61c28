//! End-to-end CLI behaviour: exit codes, JSON schema conformance, file
//! round-trips, and byte-identical re-runs.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct CliOutput {
    status: i32,
    stdout: String,
    stderr: String,
}

fn cwc(args: &[&str]) -> CliOutput {
    let output = Command::new(env!("CARGO_BIN_EXE_cwc"))
        .args(args)
        .output()
        .expect("binary runs");
    CliOutput {
        status: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8(output.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf8 stderr"),
    }
}

fn assert_schema(schema_text: &str, value: &Value) {
    let schema: Value = serde_json::from_str(schema_text).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}\nvalue: {value:#}");
}

const BOUND_SCHEMA: &str = include_str!("../schemas/bound.schema.json");
const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");
const STATS_SCHEMA: &str = include_str!("../schemas/stats.schema.json");
const EXACT_SCHEMA: &str = include_str!("../schemas/exact.schema.json");
const VERIFY_SCHEMA: &str = include_str!("../schemas/verify.schema.json");
const SWEEP_SCHEMA: &str = include_str!("../schemas/sweep.schema.json");

#[test]
fn bound_cwc_matches_documented_shape() {
    let out = cwc(&["bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2"]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let value: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_schema(BOUND_SCHEMA, &value);
    assert_eq!(value["bound"], "4");
    assert_eq!(value["parity"], "odd");
    assert_eq!(value["kind"], "cwc");
    assert_eq!(value["f"], Value::Null);
}

#[test]
fn bound_ccc_carries_f_and_witness() {
    let out = cwc(&["bound", "--q", "3", "--n", "6", "--d", "4", "--wbar", "1,1"]);
    assert_eq!(out.status, 0);
    let value: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_schema(BOUND_SCHEMA, &value);
    assert_eq!(value["bound"], "3");
    assert_eq!(value["parity"], "even");
    assert_eq!(value["f"], "2");
    assert_eq!(value["witness"], serde_json::json!([1, 1]));
}

#[test]
fn bound_requires_exactly_one_constraint() {
    let neither = cwc(&["bound", "--q", "3", "--n", "4", "--d", "3"]);
    assert_eq!(neither.status, 1);
    let both = cwc(&[
        "bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2", "--wbar", "1,1",
    ]);
    assert_eq!(both.status, 1);
}

#[test]
fn unknown_flags_are_rejected_with_usage() {
    let out = cwc(&["bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2", "--frob"]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("Usage"), "stderr: {}", out.stderr);
}

#[test]
fn construct_verify_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let code_path = dir.path().join("code.txt");
    let report_path = dir.path().join("report.json");
    let args = [
        "construct", "--q", "3", "--n", "12", "--d", "3", "--w", "2",
        "--algo", "nibble", "--seed", "7",
        "--out", code_path.to_str().unwrap(),
        "--report", report_path.to_str().unwrap(),
    ];
    let out = cwc(&args);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_schema(REPORT_SCHEMA, &report);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["algorithm"], "nibble");

    let verify_out = cwc(&["verify", "--in", code_path.to_str().unwrap()]);
    assert_eq!(verify_out.status, 0, "stderr: {}", verify_out.stderr);
    let verdict: Value = serde_json::from_str(&verify_out.stdout).unwrap();
    assert_schema(VERIFY_SCHEMA, &verdict);
    assert_eq!(verdict["status"], "ok");

    // Re-run into fresh paths: result files must be byte-identical.
    let code2 = dir.path().join("code2.txt");
    let report2 = dir.path().join("report2.json");
    let rerun = [
        "construct", "--q", "3", "--n", "12", "--d", "3", "--w", "2",
        "--algo", "nibble", "--seed", "7",
        "--out", code2.to_str().unwrap(),
        "--report", report2.to_str().unwrap(),
    ];
    assert_eq!(cwc(&rerun).status, 0);
    assert_eq!(
        std::fs::read(&code_path).unwrap(),
        std::fs::read(&code2).unwrap()
    );
    assert_eq!(
        std::fs::read(&report_path).unwrap(),
        std::fs::read(&report2).unwrap()
    );
}

#[test]
fn construct_refuses_even_distance() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("never.txt");
    let out = cwc(&[
        "construct", "--q", "3", "--n", "8", "--d", "4", "--w", "3",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status, 1);
    assert!(
        out.stderr.contains("even d unsupported by constructor"),
        "stderr: {}",
        out.stderr
    );
    assert!(!out_path.exists());
}

#[test]
fn verify_flags_violations_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "#cwc q=3 n=4 d=3 w=2\n1200\n1020\n").unwrap();
    let out = cwc(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status, 2);
    let verdict: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_schema(VERIFY_SCHEMA, &verdict);
    assert_eq!(verdict["status"], "violation");
    assert_eq!(verdict["kind"], "pair");
}

#[test]
fn verify_rejects_malformed_files_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.txt");
    std::fs::write(&path, "not a code file\n").unwrap();
    assert_eq!(cwc(&["verify", "--in", path.to_str().unwrap()]).status, 1);

    let dup = dir.path().join("dup.txt");
    std::fs::write(&dup, "#cwc q=3 n=4 d=3 w=2\n1200\n1200\n").unwrap();
    assert_eq!(cwc(&["verify", "--in", dup.to_str().unwrap()]).status, 1);

    assert_eq!(cwc(&["verify", "--in", "/nonexistent/path.txt"]).status, 1);
}

#[test]
fn exact_reports_tight_instance_and_witness_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("witness.txt");
    let out = cwc(&[
        "exact", "--q", "3", "--n", "4", "--d", "3", "--w", "2",
        "--witness-out", witness.to_str().unwrap(),
    ]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let value: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_schema(EXACT_SCHEMA, &value);
    assert_eq!(value["value"], 4);
    assert_eq!(value["bound"], "4");
    assert_eq!(value["tight"], true);
    assert_eq!(value["status"], "exact");

    let verify_out = cwc(&["verify", "--in", witness.to_str().unwrap()]);
    assert_eq!(verify_out.status, 0);
}

#[test]
fn exact_cap_exceeded_is_a_verdict() {
    let out = cwc(&[
        "exact", "--q", "3", "--n", "10", "--d", "3", "--w", "2", "--cap", "10",
    ]);
    assert_eq!(out.status, 3);
    assert!(out.stderr.contains("cap"), "stderr: {}", out.stderr);
}

#[test]
fn stats_closed_form_and_empirical() {
    let closed = cwc(&["stats", "--q", "3", "--n", "5", "--d", "3", "--w", "2"]);
    assert_eq!(closed.status, 0);
    let value: Value = serde_json::from_str(&closed.stdout).unwrap();
    assert_schema(STATS_SCHEMA, &value);
    assert_eq!(value["closed_form"], "8");
    assert_eq!(value["max_degree"], Value::Null);

    let empirical = cwc(&[
        "stats", "--q", "3", "--n", "5", "--d", "3", "--w", "2", "--mode", "empirical",
    ]);
    assert_eq!(empirical.status, 0);
    let value: Value = serde_json::from_str(&empirical.stdout).unwrap();
    assert_schema(STATS_SCHEMA, &value);
    assert_eq!(value["max_degree"], "8");
    assert!(value["alpha_fc"].is_string());
}

#[test]
fn stats_budget_exceeded_is_a_verdict() {
    let out = cwc(&[
        "stats", "--q", "3", "--n", "10", "--d", "3", "--w", "3",
        "--mode", "empirical", "--budget", "5",
    ]);
    assert_eq!(out.status, 3);
}

#[test]
fn stats_conflicts_require_composition_specs() {
    let cwc_out = cwc(&[
        "stats", "--q", "3", "--n", "8", "--d", "3", "--w", "2", "--conflicts",
    ]);
    assert_eq!(cwc_out.status, 1);

    let ccc_out = cwc(&[
        "stats", "--q", "3", "--n", "8", "--d", "3", "--wbar", "1,1", "--conflicts",
    ]);
    assert_eq!(ccc_out.status, 0);
    let value: Value = serde_json::from_str(&ccc_out.stdout).unwrap();
    assert_schema(STATS_SCHEMA, &value);
    assert_eq!(value["conflicts"]["delta2_envelope"], "2");
}

#[test]
fn sweep_writes_csv_and_json_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("sweep");
    let args = [
        "sweep", "--q", "3", "--d", "3", "--w", "2",
        "--n-values", "6,8", "--seeds", "0,1",
        "--out", base.to_str().unwrap(),
    ];
    assert_eq!(cwc(&args).status, 0);
    let json_path = base.with_extension("json");
    let csv_path = base.with_extension("csv");
    let table: Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_schema(SWEEP_SCHEMA, &table);
    assert_eq!(table["rows"].as_array().unwrap().len(), 2);

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with(
        "n,bound,best_size,mean_size,mean_size_decimal,ratio,ratio_decimal,errors\n"
    ));

    // Byte-identical on re-run.
    let base2 = dir.path().join("sweep2");
    let rerun = [
        "sweep", "--q", "3", "--d", "3", "--w", "2",
        "--n-values", "6,8", "--seeds", "0,1",
        "--out", base2.to_str().unwrap(),
    ];
    assert_eq!(cwc(&rerun).status, 0);
    assert_eq!(
        std::fs::read(&json_path).unwrap(),
        std::fs::read(base2.with_extension("json")).unwrap()
    );
    assert_eq!(
        std::fs::read(&csv_path).unwrap(),
        std::fs::read(base2.with_extension("csv")).unwrap()
    );
}

#[test]
fn sweep_plan_validation() {
    let even_d = cwc(&["sweep", "--q", "3", "--d", "4", "--w", "2", "--n-values", "6,8", "--seeds", "0"]);
    assert_eq!(even_d.status, 1);
    let bad_order = cwc(&["sweep", "--q", "3", "--d", "3", "--w", "2", "--n-values", "8,6", "--seeds", "0"]);
    assert_eq!(bad_order.status, 1);
}

#[test]
fn sweep_stdout_formats() {
    let json_out = cwc(&[
        "sweep", "--q", "3", "--d", "3", "--w", "2", "--n-values", "6", "--seeds", "0",
    ]);
    assert_eq!(json_out.status, 0);
    let value: Value = serde_json::from_str(&json_out.stdout).unwrap();
    assert_schema(SWEEP_SCHEMA, &value);

    let csv_out = cwc(&[
        "--format", "csv",
        "sweep", "--q", "3", "--d", "3", "--w", "2", "--n-values", "6", "--seeds", "0",
    ]);
    assert_eq!(csv_out.status, 0);
    assert!(csv_out.stdout.starts_with("n,bound,"));
}

#[test]
fn log_sidecar_captures_timing() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("run.log");
    let out = cwc(&[
        "--log", log.to_str().unwrap(),
        "bound", "--q", "3", "--n", "4", "--d", "3", "--w", "2",
    ]);
    assert_eq!(out.status, 0);
    let text = std::fs::read_to_string(&log).unwrap();
    assert!(text.contains("cmd=bound"), "log: {text}");
    assert!(text.contains("elapsed_ms="));
}

#[test]
fn code_files_round_trip_through_the_parser() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("roundtrip.txt");
    let out = cwc(&[
        "construct", "--q", "12", "--n", "6", "--d", "3", "--w", "2",
        "--seed", "3", "--out", path.to_str().unwrap(),
        "--report", dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status, 0, "stderr: {}", out.stderr);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("#cwc q=12 n=6 d=3 w=2\n"));
    assert!(Path::new(&path).exists());
    let verify_out = cwc(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(verify_out.status, 0);
}
