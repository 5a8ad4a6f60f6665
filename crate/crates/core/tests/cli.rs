//! Black-box tests of the `pqvir` binary.

use std::process::{Command, Output};

fn pqvir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqvir")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = pqvir(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn bracket_prints_coefficient_and_limits() {
    let out = pqvir(&["bracket", "--n", "3", "--indices", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("q^-2 - p^2"), "{text}");
    let v = json(&["bracket", "--n", "3", "--indices", "0,1,2"]);
    assert_eq!(v["command"], "bracket");
    assert_eq!(v["results"][0]["input"]["index"], 3);
    assert_eq!(v["results"][1]["residual"], "q^-2 - q^2");
    assert_eq!(v["results"][2]["residual"], "0");
}

#[test]
fn bracket_with_negative_indices() {
    let v = json(&["bracket", "--n", "2", "--indices", "-1,1"]);
    assert_eq!(v["results"][0]["input"]["index"], 0);
    assert_eq!(v["results"][2]["residual"], "-2");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "sh-jacobi", "--n", "3", "--indices", "0,1"][..],
        &["bracket", "--n", "3", "--indices", "0,1"],
        &["verify", "fi", "--n", "3", "--paper-counterexample"],
        &["no-such-command"],
        &["verify", "skew", "--window", "-1"],
    ] {
        assert_eq!(pqvir(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(pqvir(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_check_exits_1_with_residual() {
    let out = pqvir(&["verify", "fi", "--n", "3", "--indices", "-2,-1,0,1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verify fi"));
    assert!(text.contains("FAIL fi"));
}

#[test]
fn fi_counterexample_is_expected_fail() {
    let v = json(&["verify", "fi", "--n", "4", "--paper-counterexample"]);
    assert_eq!(v["results"][0]["verdict"], "pass");
    assert_ne!(v["results"][0]["residual"], "0");
    assert_eq!(v["results"][0]["input"]["Y"], serde_json::json!([-2, -3, 6]));
}

#[test]
fn sweep_json_is_deterministic_and_echoes_seed() {
    let args = ["verify", "sh-jacobi", "--n", "5", "--samples", "3", "--seed", "7", "--format", "json"];
    let a = pqvir(&args);
    let b = pqvir(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["params"]["seed"], 7);
    assert_eq!(v["summary"]["pass"], 3);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = ["subalgebra", "search", "--n", "3", "--window", "2", "--format", "json"];
    let out = pqvir(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), pqvir(&args).stdout);
}

#[test]
fn subalgebra_commands() {
    let v = json(&["subalgebra", "search", "--n", "3", "--window", "2"]);
    let last = v["results"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["kind"], "no-larger-subalgebra");
    assert_eq!(last["verdict"], "pass");
    let v = json(&["subalgebra", "check", "--n", "3", "--indices", "-2,2,5"]);
    assert_eq!(v["results"][0]["input"]["ideal_at"], 5);
    assert_eq!(pqvir(&["subalgebra", "check", "--n", "3", "--indices", "0,1,2"]).status.code(), Some(1));
    assert_eq!(pqvir(&["subalgebra", "canonical", "--n", "5"]).status.code(), Some(0));
}

#[test]
fn oracle_check_passes() {
    let out = pqvir(&["oracle-check", "--window", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn smoke_suite_passes() {
    let v = json(&["verify", "all", "--level", "smoke"]);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 8);
}
