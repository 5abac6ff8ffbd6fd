use std::process::{Command, Output};

use serde_json::Value;

fn ramify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramify")).args(args).env_remove("RAMIFY_BUDGET_STEPS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn phi_reports_degree_and_trials() {
    let out = ramify(&["phi", "2,2", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["partition"], serde_json::json!([2, 2]));
    let trials = v["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 6);
    assert_eq!(trials[0]["seed"], 42);
    assert_eq!(trials[5]["prime"], 1000003);

    assert_eq!(json(&ramify(&["phi", "1,3"]))["degree"], 1);
    assert_eq!(json(&ramify(&["phi", "3,1"]))["partition"], serde_json::json!([1, 3]));
}

#[test]
fn usage_errors_exit_64() {
    for args in [&["phi", "0,2"][..], &["phi", "a,b"], &["--bogus"], &["phi"], &["catalan", "1"], &["phi", "2,2", "--primes", "32004"]] {
        assert_eq!(ramify(args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(ramify(&["--help"]).status.code(), Some(0));
}

#[test]
fn rank_verdicts() {
    for (p, verdict) in [("1,1,1,2", false), ("2,2,2", true), ("1,1", true)] {
        let out = ramify(&["rank", p]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["maximal_variation"], verdict, "{p}");
    }
}

#[test]
fn catalan_values() {
    let out = ramify(&["catalan", "5", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "14");
    assert_eq!(json(&ramify(&["catalan", "30"]))["plucker_degree"], 1_002_242_216_651_368u64);
}

#[test]
fn table_layout() {
    let out = ramify(&["table", "--max-d", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["a1\\a2", "1", "2", "3", "4"]);
    assert_eq!(rows[2], ["2", "1", "2", "", ""]);
    assert_eq!(rows[3], ["3", "1", "6", "", ""]);
    assert_eq!(rows[4], ["4", "1", "", "", ""]);
}

#[test]
fn replay_is_byte_identical() {
    let args = ["phi", "2,3", "--seed", "7", "--no-timing"];
    let (a, b) = (ramify(&args), ramify(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["trials"].as_array().unwrap().iter().all(|t| t["ms"] == 0));
}

#[test]
fn budget_exit_code_and_env_override() {
    let out = ramify(&["phi", "2,3", "--budget-steps", "10"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    assert_eq!(v["degree"], Value::Null);
    assert_eq!(v["trials"][0]["budget_exhausted"], true);

    let env = Command::new(env!("CARGO_BIN_EXE_ramify"))
        .args(["phi", "2,3"])
        .env("RAMIFY_BUDGET_STEPS", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(4));

    let table = ramify(&["table", "--max-d", "5", "--budget-steps", "200"]);
    assert_eq!(table.status.code(), Some(4));
    assert!(String::from_utf8(table.stdout).unwrap().contains("skipped"));
}

#[test]
fn no_consensus_exit_code() {
    // A single prime can never reach consensus.
    let out = ramify(&["phi", "2,2", "--primes", "32003"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["agreement"], false);
}

#[test]
fn veronese_and_formats() {
    assert_eq!(json(&ramify(&["veronese"]))["degree"], 3);
    let csv = String::from_utf8(ramify(&["phi", "1,2", "--format", "csv", "--no-timing"]).stdout).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "partition,geometry,degree,agreement,prime,seed,value,zero_dim,ms,budget_exhausted");
    assert_eq!(csv.lines().nth(1).unwrap(), "\"1,2\",scroll,1,true,32003,1,1,true,0,false");
    let text = String::from_utf8(ramify(&["phi", "1,2", "--format", "text"]).stdout).unwrap();
    assert!(text.starts_with("phi(1,2) = 1\n"));
}

#[test]
fn selftest_passes() {
    let out = ramify(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
