//! End-to-end runs of the `qrgroups` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qrgroups"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn rational(v: &Value) -> (String, String) {
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

#[test]
fn bounds_sl2_f7_is_tight() {
    let out = run(&["bounds", "--family", "sl2", "--p", "7", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "bounds");
    let r = &v["result"];
    assert_eq!(r["m"], 3);
    assert_eq!(rational(&r["h"]), ("3".into(), "1".into()));
    assert_eq!(r["pass"], true);
}

#[test]
fn padic_formula_value() {
    let out = run(&["pf", "--mode", "formula-padic", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(rational(&r["value"]), ("2".into(), "5".into()));
    assert_eq!(r["value_text"], "2/5");
}

#[test]
fn sp4_f3_order() {
    let out = run(&["group", "--family", "sp", "--k", "2", "--p", "3", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["order"], 51840);
    assert_eq!(r["classes"], 34);
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["mixing", "--family", "sl2", "--p", "3", "--trials", "10", "--seed", "5", "--workers", "1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let search = ["pf", "--mode", "search", "--family", "abelian", "--factors", "3,3", "--workers", "1"];
    assert_eq!(run(&search).stdout, run(&search).stdout);
}

#[test]
fn worker_count_does_not_change_exact_results() {
    let one = json(&run(&["degrees", "--family", "sl2", "--p", "5", "--workers", "1"]));
    let four = json(&run(&["degrees", "--family", "sl2", "--p", "5", "--workers", "4"]));
    assert_eq!(one["result"]["table"], four["result"]["table"]);
    assert_eq!(one["result"]["m"], 2);
}

#[test]
fn degrees_checks_pass() {
    let out = run(&["degrees", "--family", "quaternion", "--full"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["checks"]["degree_square_sum"], 8);
    assert_eq!(r["m"], 1);
    assert_eq!(r["m_f"]["value"], 2);
    assert!(r["table"]["values"].is_array());
}

#[test]
fn usage_errors_exit_4() {
    for args in [
        vec!["group", "--family", "sl"],
        vec!["bogus"],
        vec!["bounds", "--family", "alt", "--k", "5"],
        vec!["bounds", "--family", "sl2", "--p", "2"],
        vec!["tree", "--k", "3", "--depth", "3"],
        vec!["group", "--family", "sl2", "--p", "3", "--tolerance", "-1"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 4, "{args:?}");
        let v = json(&out);
        assert_eq!(v["schema"], 1);
        assert!(v["error"].is_string() && v["detail"].is_string(), "{args:?}");
    }
}

#[test]
fn resource_errors_exit_3() {
    let out = run(&["group", "--family", "sl", "--k", "4", "--p", "5"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["error"], "TooLarge");
    let out = run(&["group", "--family", "alt", "--k", "6", "--element-budget", "100"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn unfinished_search_exits_3_with_best_found() {
    let out = run(&["pf", "--mode", "search", "--family", "sl2", "--p", "5", "--node-budget", "100"]);
    assert_eq!(code(&out), 3);
    let r = &json(&out)["result"];
    assert_eq!(r["optimal"], false);
    assert_eq!(r["verified"], true);
}

#[test]
fn coset_and_search_agree_on_sl2_f3() {
    let coset = json(&run(&["pf", "--mode", "coset", "--family", "sl2", "--p", "3"]));
    assert_eq!(coset["result"]["density_text"], "1/4");
    assert_eq!(coset["result"]["verified"], true);
    let out = run(&["pf", "--mode", "search", "--family", "sl2", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["optimal"], true);
    // the exact maximum dominates any construction
    let size = r["size"].as_u64().unwrap();
    assert!(size >= coset["result"]["size"].as_u64().unwrap());
}

#[test]
fn abelian_formula_verification() {
    let out = run(&["pf", "--mode", "formula-abelian", "--factors", "5", "--verify"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["value_text"], "2/5");
    assert_eq!(r["verification"]["pass"], true);
}

#[test]
fn tree_report() {
    let out = run(&["tree", "--k", "3", "--depth", "2"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["levels"][1]["order"], "7776");
    assert_eq!(r["levels"][1]["matches"], true);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 11\nnode-budget = 10\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let args = ["pf", "--mode", "search", "--family", "sl2", "--p", "3", "--config", cfg];
    assert_eq!(code(&run(&args)), 3);
    let mut more = args.to_vec();
    more.extend(["--node-budget", "100000"]);
    assert_eq!(code(&run(&more)), 0);

    std::fs::write(dir.path().join("bad.toml"), "sede = 1\n").unwrap();
    let bad = dir.path().join("bad.toml");
    let out = run(&["pf", "--mode", "formula-padic", "--p", "5", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["pf", "--mode", "formula-series", "--p", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "pf");
}

#[test]
fn report_takes_the_worst_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(
        &manifest,
        r#"[
            {"name": "ok", "command": "pf", "mode": "formula-padic", "p": 5},
            {"name": "budget", "command": "pf", "mode": "search", "family": "sl2", "p": 5, "node_budget": 100},
            {"name": "bad", "command": "group", "family": "sl"}
        ]"#,
    )
    .unwrap();
    let out = run(&["report", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    let r = &json(&out)["result"];
    let codes: Vec<i64> = r["entries"].as_array().unwrap().iter().map(|e| e["exit_code"].as_i64().unwrap()).collect();
    assert_eq!(codes, vec![0, 3, 4]);
    let table = String::from_utf8_lossy(&out.stderr);
    assert!(table.contains("PASS") && table.contains("RESOURCE") && table.contains("1/3 passed"));
}

#[test]
fn checked_in_manifest_passes() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests/acceptance.json");
    let out = run(&["report", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = &json(&out)["result"];
    assert_eq!(r["passed"], r["total"]);
}
