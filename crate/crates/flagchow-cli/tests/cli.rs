//! End-to-end tests of the binary: outputs, formats, determinism, exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagchow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "command {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn schubert_command() {
    let out = stdout(&["schubert", "--perm", "3,2,1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["polynomial"], "X1^2*X2");
    assert_eq!(v["perm"], "3,2,1");
}

#[test]
fn degree_command_examples() {
    let out = stdout(&["degree", "--n", "3", "--exponents", "0,4,0", "--format", "tsv"]);
    assert_eq!(out.trim(), "1/2");
    let out = stdout(&["degree", "--n", "3", "--exponents", "0,4,0"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], "1/2");
    // rationals are strings, never JSON numbers
    assert!(v["degree"].is_string());
}

#[test]
fn table_command_shape() {
    let out = stdout(&["table", "--n", "3", "--times4"]);
    let lines: Vec<&str> = out.trim().lines().collect();
    assert_eq!(lines.len(), 15);
    for line in &lines {
        assert_eq!(line.split('\t').count(), 3);
    }
    assert!(lines.contains(&"0,4,0\t1/2\t2"));
    // json variant validates as a list of objects with string rationals
    let out = stdout(&["table", "--n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 15);
    assert!(v[0]["degree"].is_string());
}

#[test]
fn height_command() {
    let out = stdout(&["height", "--flag", "1,2", "--format", "tsv"]);
    assert_eq!(out.trim(), "1/2");
    let out = stdout(&["height", "--flag", "1,3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["height"], "5/4");
}

#[test]
fn bott_chern_command() {
    let out = stdout(&["bott-chern", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["form"],
        "- 1 * O12 - 1 * O13 - 1 * O23 - 1 * O12^O13 - 1 * O12^O23 + 3 * O13^O23"
    );
    let out = stdout(&["bott-chern", "--n", "3", "--phi", "e2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["form"], "- 1 * O12 - 1 * O13 - 1 * O23");
}

#[test]
fn monk_command() {
    let out = stdout(&["monk", "--n", "2", "--k", "1", "--perm", "2,1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"]["form"], "1 * O12");
    assert!(v["class"]["schubert"].as_object().unwrap().is_empty());
}

#[test]
fn byte_identical_payloads() {
    for args in [
        vec!["degree", "--n", "3", "--exponents", "2,1,1"],
        vec!["table", "--n", "3", "--times4"],
        vec!["bott-chern", "--n", "3"],
        vec!["height", "--flag", "1,2,3"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "nondeterministic payload for {args:?}");
    }
}

#[test]
fn verify_small_all_green_except_reference_table() {
    // at n-max 2 the reference-table check does not apply and all pass
    let out = run(&["verify", "--suite", "all", "--n-max", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn verify_reports_reference_table_discrepancy() {
    // at n-max 3 the printed-table check reports its six known deviations
    let out = run(&["verify", "--suite", "chow", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["failed"], 1);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["chow/reference-table"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["degree", "--n", "9", "--exponents", "1"]).status.code(), Some(2));
    assert_eq!(run(&["degree", "--n", "3", "--exponents", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["schubert", "--perm", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn nmax_env_override_lowers_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_flagchow"))
        .env("FLAGCHOW_NMAX", "2")
        .args(["degree", "--n", "3", "--exponents", "0,4,0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
