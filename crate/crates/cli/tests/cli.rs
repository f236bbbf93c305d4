use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn svir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_report(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let out_s = out.to_str().unwrap().to_string();
    all.extend(["--output", &out_s]);
    let o = svir(&all);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (
        o.status.code().unwrap(),
        doc,
        String::from_utf8(o.stdout).unwrap(),
    )
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("session.json");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn lemma31_report() {
    let (code, doc, text) = with_report(&["lemma31", "--k", "2", "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["checks"][0]["detail"]["det"], "1");
    assert!(doc["checks"][1]["detail"]["violations"].as_array().unwrap().is_empty());
    assert!(text.starts_with("lemma31: PASS"));
}

#[test]
fn simplicity_finds_y0() {
    let (code, doc, _) = with_report(&["simplicity", "--family", "SBprime", "--radius", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["candidates"], serde_json::json!([["y[0,0]"]]));
}

#[test]
fn jacobi_fuzz_reports_residuals_and_fails() {
    let (code, doc, _) = with_report(&["jacobi-fuzz", "--radius", "1"]);
    assert_eq!(code, 1);
    let failures = doc["checks"][0]["detail"]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures[0]["residual"].as_str().unwrap().ends_with("*c"));
}

#[test]
fn jacobi_fuzz_passes_with_flipped_sign() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"n": 2, "sigma": ["1/2", 0], "odd_central": "flipped"}"#,
    );
    let (code, doc, _) = with_report(&["--config", &cfg, "jacobi-fuzz", "--radius", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["config"]["odd_central"], "flipped");
    assert_eq!(doc["result"]["triples"], 4096);
}

#[test]
fn rep_fuzz_from_config_family() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"n": 2, "sigma": ["1/2", 0], "family": "SAprime", "params": {"a'": "3/2"}, "radius": 1}"#,
    );
    let (code, doc, _) = with_report(&["--config", &cfg, "rep-fuzz"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["family"], "SAprime");
    assert!(doc["result"]["special_cases"].as_u64().unwrap() > 0);
}

#[test]
fn bracket_and_act() {
    let o = svir(&["bracket", "(a+2*d1)*G[1/2,0]", "G[-1/2,0]"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("L[0,0]"), "{text}");

    let o = svir(&["--json", "act", "--family", "SA", "L[1,0]", "x[0,0]"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"]["action"], "(d1*b + a)*x[1,0]");
}

#[test]
fn ladder_g_form_fails_beyond_one_step() {
    let (code, _, _) = with_report(&["ladder", "--m", "1"]);
    assert_eq!(code, 0);
    let (code, doc, _) = with_report(&["ladder", "--m", "3"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["identity"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["G-ladder m = 2", "G-ladder m = 3"]);
}

#[test]
fn lemma32_and_iso_check() {
    let (code, doc, _) = with_report(&["lemma32", "--mu", "[-1,2]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["basis"], serde_json::json!([[-3, 4], [-1, 1]]));

    let (_, doc, _) = with_report(&[
        "iso-check", "--m", "1", "--s", "1/2", "--mprime", "2", "--sprime", "1", "--alpha", "2",
    ]);
    assert_eq!(doc["result"]["isomorphic"], true);
    let (_, doc, _) = with_report(&[
        "iso-check", "--m", "1", "--s", "1/2", "--mprime", "3", "--sprime", "1", "--alpha", "2",
    ]);
    assert_eq!(doc["result"]["isomorphic"], false);
}

#[test]
fn ghw_and_quotient() {
    let (code, doc, _) = with_report(&["ghw", "--family", "SA", "--vector", "x[0,0]", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["annihilated"], false);
    assert_eq!(doc["result"]["counterexample"]["operator"], "L[1,1]");

    let (code, doc, _) = with_report(&[
        "quotient", "--family", "SBprime", "--sub", "y[0,0]", "--radius", "2",
    ]);
    assert_eq!(code, 0);
    let rows = doc["result"]["rows"].as_array().unwrap();
    for r in rows {
        let expect = if r["vector"] == "y[0,0]" { 0 } else { 1 };
        assert_eq!(r["dim"], expect);
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["simplicity", "--family", "SA", "--radius", "1"];
    let (_, a, _) = with_report(&args);
    let (_, b, _) = with_report(&args);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(svir(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(svir(&["bracket", "L[1/2,0]", "c"]).status.code(), Some(2));
    assert_eq!(svir(&["lemma31"]).status.code(), Some(2));
    assert_eq!(svir(&["--config", "/nonexistent.json", "lemma31", "--k", "1"]).status.code(), Some(2));
    let o = svir(&["bracket", "L[1,0] +", "c"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("offset 8"));
}
