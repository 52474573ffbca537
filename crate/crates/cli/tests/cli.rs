//! End-to-end tests of the binary: exit codes, report shape, determinism,
//! and config-file handling.

use std::process::Command;

fn coordlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coordlab"))
}

#[test]
fn full_run_passes_and_reports_json() {
    let out = coordlab()
        .args(["run", "--suite", "all", "--n", "2", "--k", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["summary"]["failed"], 0);
    assert!(report["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn unknown_protocol_exits_with_usage_error() {
    let out = coordlab()
        .args(["run", "--protocol", "mystery"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("seq-search"), "diagnostic must name valid options: {stderr}");
    assert!(stderr.contains("and-poll"));
}

#[test]
fn exhausted_budget_exits_with_budget_code() {
    let out = coordlab()
        .args([
            "run", "--suite", "costs", "--budget", "1", "--n", "1", "--k", "3", "--protocol",
            "and-poll", "--dist", "hard-onebit",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["summary"]["budget_errors"].as_u64().unwrap() > 0);
}

#[test]
fn failing_check_exits_with_failure_code() {
    // An absurdly small tolerance turns benign floating-point noise into
    // failures.
    let out = coordlab()
        .args(["run", "--suite", "infotheory", "--tol", "1e-300"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "run", "--suite", "all", "--n", "1", "--k", "2", "--protocol", "and-poll", "--dist",
        "hard-onebit",
    ];
    let a = coordlab().args(args).output().unwrap();
    let b = coordlab().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_report_has_fixed_header() {
    let out = coordlab()
        .args([
            "run", "--suite", "costs", "--n", "1", "--k", "2", "--protocol", "naive", "--dist",
            "hard-onebit", "--format", "csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,detail,lhs,rhs,margin,pass,error"));
    assert!(lines.next().unwrap().starts_with("cc-vs-ic,"));
}

#[test]
fn config_file_provides_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join("coordlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("config.json");
    std::fs::write(
        &config_path,
        r#"{"protocol": "naive", "dist": "hard-onebit", "n": 1, "k": 2, "suite": "costs"}"#,
    )
    .unwrap();
    let out_path = dir.join("report.json");
    let out = coordlab()
        .args([
            "run",
            "--config",
            config_path.to_str().unwrap(),
            "--k",
            "3",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["config"]["protocol"], "naive");
    assert_eq!(report["config"]["k"], 3);
    assert_eq!(report["config"]["n"], 1);
}

#[test]
fn dimension_caps_are_config_errors() {
    let out = coordlab().args(["run", "--k", "40"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
