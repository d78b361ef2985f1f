//! End-to-end tests of the `affschur` binary: JSON output, exit codes and the
//! global flags.

use std::process::{Command, Output};

use serde_json::Value;

const E12: &str = r#"{"n":2,"entries":[[1,2,1]]}"#;
const E23: &str = r#"{"n":2,"entries":[[2,3,1]]}"#;
const E13: &str = r#"{"n":2,"entries":[[1,3,1]]}"#;
const A: &str = r#"{"n":2,"entries":[[1,2,1],[2,1,1]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affschur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(args: &[&str], code: i32) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["message"].is_string());
    err["error"].as_str().unwrap().to_string()
}

#[test]
fn kl_reports_polynomial() {
    let v = json_ok(&[
        "kl",
        "--y",
        r#"{"r":3,"window":[1,2,3]}"#,
        "--w",
        r#"{"r":3,"window":[2,1,3]}"#,
    ]);
    assert_eq!(v["command"], "kl");
    assert_eq!(v["P"], serde_json::json!(["1"]));
}

#[test]
fn theta_defaults_to_sigma() {
    let v = json_ok(&["theta", "--a", A]);
    assert_eq!(v["r"], 2);
    let terms = v["theta"]["terms"].as_array().unwrap();
    let a: Value = serde_json::from_str(A).unwrap();
    let leading: Vec<&Value> = terms.iter().filter(|t| t[0] == a).collect();
    assert_eq!(leading.len(), 1);
    assert_eq!(leading[0][1], serde_json::json!([[0, "1"]]));
}

#[test]
fn mult_in_both_bases() {
    let std = json_ok(&["mult", "--a", A, "--b", A]);
    assert_eq!(std["basis"], "standard");
    assert!(!std["product"]["terms"].as_array().unwrap().is_empty());
    let can = json_ok(&["mult", "--basis", "canonical", "--a", A, "--b", A]);
    assert_eq!(can["product"]["kind"], "g");
    let g = json_ok(&["g-table", "--a", A, "--b", A]);
    assert_eq!(g, can["product"]);
}

#[test]
fn positive_part_tables() {
    let f = json_ok(&["f-table", "--a", E12, "--b", E23]);
    assert_eq!(f["kind"], "f");
    assert_eq!(f["entries"].as_array().unwrap().len(), 1);
    let h = json_ok(&["h-table", "--a", E12, "--b", E23]);
    assert_eq!(h["kind"], "h");
    assert!(h["r"].as_u64().unwrap() >= 2);
}

#[test]
fn hall_polynomial() {
    let v = json_ok(&["hall", "--a", E12, "--b", E23, "--c", E13]);
    assert_eq!(v["phi"], serde_json::json!(["1"]));
}

#[test]
fn verify_passes_with_report() {
    let v = json_ok(&["verify", "kl-basics", "--r", "2"]);
    assert_eq!(v["check"], "kl-basics");
    assert_eq!(v["passed"], true);
    assert!(v["cases"].as_u64().unwrap() > 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["theta", "--a", r#"{"n":2,"entries":[[1,2,2],[2,1,1]]}"#];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn matrices_can_come_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(&path, A).unwrap();
    let from_file = json_ok(&["theta", "--a", path.to_str().unwrap()]);
    assert_eq!(from_file, json_ok(&["theta", "--a", A]));
}

#[test]
fn out_and_cache_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let cache = dir.path().join("kl.cache");
    let owned = [
        "--out".to_string(),
        out.display().to_string(),
        "--cache".to_string(),
        cache.display().to_string(),
        "theta".to_string(),
        "--a".to_string(),
        r#"{"n":2,"entries":[[1,1,1],[1,2,1],[2,3,1]]}"#.to_string(),
    ];
    let args: Vec<&str> = owned.iter().map(String::as_str).collect();

    let first = run(&args);
    assert!(first.status.success());
    assert!(first.stdout.is_empty());
    let report = std::fs::read_to_string(&out).unwrap();
    assert!(std::fs::metadata(&cache).unwrap().len() > 0);

    let second = run(&args);
    assert!(second.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), report);

    std::fs::write(&cache, "garbage\n").unwrap();
    assert_eq!(error_kind(&args, 5), "io");
}

#[test]
fn exit_codes_distinguish_errors() {
    assert_eq!(
        error_kind(&["theta", "--a", "{not json"], 2),
        "invalid-input"
    );
    assert_eq!(
        error_kind(&["theta", "--a", r#"{"n":2,"entries":[[1,2,-1]]}"#], 2),
        "invalid-input"
    );
    assert_eq!(
        error_kind(&["verify", "zeta", "--k", "1"], 2),
        "invalid-input"
    );
    assert_eq!(error_kind(&["theta", "--a", E12], 3), "too-small");
    assert_eq!(
        error_kind(&["theta", "--a", r#"{"n":1,"entries":[[1,1,2]]}"#], 3),
        "too-small"
    );
    assert_eq!(
        error_kind(&["verify", "canonical", "--n", "1"], 3),
        "too-small"
    );
    assert_eq!(
        error_kind(
            &[
                "--cap-r",
                "2",
                "theta",
                "--a",
                r#"{"n":2,"entries":[[1,1,3]]}"#
            ],
            4
        ),
        "cap-exceeded"
    );
    assert_eq!(
        error_kind(
            &["--cap-dim", "1", "hall", "--a", E12, "--b", E23, "--c", E13],
            4
        ),
        "cap-exceeded"
    );
    assert_eq!(
        error_kind(&["theta", "--a", "/nonexistent/a.json"], 5),
        "io"
    );
}

#[test]
fn unknown_checks_are_rejected_by_the_parser() {
    let out = run(&["verify", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    let help = run(&["verify", "--help"]);
    let text = String::from_utf8_lossy(&help.stdout);
    for name in affschur::verify::CHECKS {
        assert!(text.contains(name), "{name} missing from help");
    }
}
