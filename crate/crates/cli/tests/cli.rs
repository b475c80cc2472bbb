//! End-to-end tests of the `primepart` binary: output shapes, determinism,
//! argument parsing, and exit codes. A small sieve limit keeps them fast.

use assert_cmd::Command;
use predicates::prelude::*;

const SMALL_SIEVE: &str = "2000000";

fn cmd() -> Command {
    let mut c = Command::cargo_bin("primepart").unwrap();
    c.args(["--sieve-limit", SMALL_SIEVE]);
    c
}

#[test]
fn count_plain_value() {
    cmd()
        .args(["count", "--m", "2", "--x", "100"])
        .assert()
        .success()
        .stdout("34\n");
}

#[test]
fn count_scientific_x() {
    cmd()
        .args(["count", "--m", "2", "--x", "1e6"])
        .assert()
        .success()
        .stdout("2026\n");
}

#[test]
fn count_json_shape() {
    let out = cmd()
        .args(["--format", "json", "count", "--m", "3", "--x", "1000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], 3);
    assert_eq!(v["x"], 1000);
    assert!(v["count"].is_number());
}

#[test]
fn count_rejects_fractional_scientific() {
    cmd()
        .args(["count", "--m", "2", "--x", "1.25e1"])
        .assert()
        .failure()
        .code(2);
}

#[test]
fn enumerate_lists_members() {
    cmd()
        .args(["enumerate", "--m", "2", "--x", "10"])
        .assert()
        .success()
        .stdout("n\n2\n3\n4\n6\n7\n8\n9\n");
}

#[test]
fn matula_roundtrip() {
    cmd()
        .args(["matula", "decode", "3"])
        .assert()
        .success()
        .stdout("((()))\n");
    cmd()
        .args(["matula", "encode", "((()))"])
        .assert()
        .success()
        .stdout("3\n");
    cmd()
        .args(["matula", "encode", "(()())"])
        .assert()
        .success()
        .stdout("4\n");
}

#[test]
fn matula_parse_error_exit_code() {
    cmd()
        .args(["matula", "encode", "(()"])
        .assert()
        .failure()
        .code(1)
        .stderr(predicate::str::contains("error:"));
}

#[test]
fn compare_csv_header_and_rows() {
    let out = cmd()
        .args(["compare", "--m", "2", "--xs", "100,1000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,exact,log_exact,log_asym,log_weak,abs_log_residual"
    );
    assert_eq!(lines.clone().count(), 2);
    assert!(lines.next().unwrap().starts_with("100,34,"));
}

#[test]
fn constants_table_contains_expected_names() {
    let out = cmd()
        .args(["--format", "json", "constants", "--m", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["name"].as_str().unwrap())
        .collect();
    for want in ["gamma", "gamma_1", "C_{2,2}", "D_2", "K_2", "D'_2", "K", "K'"] {
        assert!(names.contains(&want), "missing constant {want}");
    }
    // Every row carries a numeric value and a nonnegative error bound.
    for row in v.as_array().unwrap() {
        assert!(row["value"].is_number());
        assert!(row["error_bound"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn byte_identical_reruns() {
    let args = ["--format", "csv", "verify", "lemma44", "--m", "2", "--us", "20,40"];
    let a = cmd().args(args).output().unwrap();
    let b = cmd().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hr_verify_values() {
    let out = cmd()
        .args(["verify", "hr", "--u", "100"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    let hr_point: f64 = cells[5].parse().unwrap();
    assert!((hr_point - 19.1100).abs() < 5e-4);
    let ratio: f64 = cells[4].parse().unwrap();
    assert!((ratio - 1.0).abs() < 0.2);
}

#[test]
fn primes_subcommands() {
    cmd().args(["primes", "nth", "100"]).assert().success().stdout("541\n");
    cmd().args(["primes", "pi", "1000"]).assert().success().stdout("168\n");
}

#[test]
fn sieve_limit_env_var() {
    let mut c = Command::cargo_bin("primepart").unwrap();
    c.env("PRIMEPART_SIEVE_LIMIT", SMALL_SIEVE)
        .args(["count", "--m", "2", "--x", "100"])
        .assert()
        .success()
        .stdout("34\n");
}

#[test]
fn usage_error_exit_code() {
    Command::cargo_bin("primepart")
        .unwrap()
        .args(["count", "--m", "2"]) // missing --x
        .assert()
        .failure()
        .code(2);
}

#[test]
fn computation_error_exit_code() {
    // x beyond what the small sieve can resolve for nth-prime lookups.
    cmd()
        .args(["primes", "nth", "999999999999"])
        .assert()
        .failure()
        .code(1)
        .stderr(predicate::str::contains("error:"));
}
