//! End-to-end tests of the `woundlab` binary and its in-process runner.

use std::process::Command;

use serde_json::Value;
use woundlab::cli::{self, verify_all, Status};

fn run(args: &[&str]) -> cli::Outcome {
    cli::run(std::iter::once("woundlab").chain(args.iter().copied()))
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_woundlab"))
        .args(["ext1", "--frobnicate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_input_exits_with_two_without_panicking() {
    for args in [
        vec!["--p", "4", "ext1"],
        vec!["weil", "--kind", "mu_p", "--r", "2"],
        vec!["wound", "--poly", "x^2 + y"],
        vec!["oesterle-map", "--lambda", "s +"],
        vec!["semilinear", "solve", "--file", "/nonexistent/system.json"],
    ] {
        let out = run(&args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stderr.starts_with("error:"), "{args:?}: {}", out.stderr);
    }
}

#[test]
fn verify_for_p2_reports_odd_prime_checks_as_unknown() {
    let report = verify_all(2, 1);
    assert!(report.passed());
    for name in ["curve_genus", "curve_regular", "ext1_vanishes", "kmt_degree_bound", "tate_gap"] {
        assert_eq!(report.status_of(name), Some(Status::Unknown), "{name}");
    }
    assert_eq!(report.status_of("alpha_p_equation"), Some(Status::Pass));
    assert_eq!(report.status_of("tower_intersection_r2"), Some(Status::Pass));
}

#[test]
fn statuses_do_not_depend_on_the_seed() {
    let a = verify_all(5, 7);
    let b = verify_all(5, 9);
    let statuses = |r: &cli::VerificationReport| -> Vec<(String, Status)> {
        r.checks.iter().map(|c| (c.name.clone(), c.status)).collect()
    };
    assert_eq!(statuses(&a), statuses(&b));
    assert!(a.passed());
}

#[test]
fn text_and_json_agree_on_statuses() {
    let text = run(&["verify", "--seed", "3"]);
    let json = run(&["verify", "--seed", "3", "--json"]);
    assert_eq!(text.code, 0);
    assert_eq!(json.code, 0);
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        let line = format!("[{}] {}:", c["status"].as_str().unwrap(), c["name"].as_str().unwrap());
        assert!(text.stdout.contains(&line), "{line}");
    }
    assert!(v.get("elapsed").is_none());
}

#[test]
fn tower_membership() {
    let out = run(&["tower", "member", "--level", "2", "--expr", "s^3 + t", "--target", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("member of level 1: true"));
    let out = run(&["tower", "member", "--level", "2", "--expr", "s", "--target", "1", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["level"], 2);
}

#[test]
fn semilinear_solve_reads_a_system_file() {
    let path = std::env::temp_dir().join(format!("woundlab-fermat-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"unknowns": 1, "equations": [[[0, 1, "1"], [0, 0, "-1"]]]}"#).unwrap();
    let out = run(&["semilinear", "solve", "--file", path.to_str().unwrap(), "--degree", "2", "--json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["basis"], serde_json::json!([["1"]]));
    assert_eq!(v["verified"], true);
}

#[test]
fn weil_oesterle_display() {
    let out = run(&["weil", "--kind", "oesterle"]);
    assert_eq!(out.stdout, "x0^3 + t*x1^3 + t^2*x2^3 + 2*x2 = 0\n");
    let out = run(&["weil", "--kind", "fiber-ord", "--r", "2", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["variables"].as_array().unwrap().len(), 12);
}

#[test]
fn wound_cross_check_reports_agreement() {
    let out = run(&["wound", "--poly", "x + t*x^9 + y^3", "--cross-check", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["cross_check"]["agrees"], true);
    assert_eq!(out.code, 0);
}
