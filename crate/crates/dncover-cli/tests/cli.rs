use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dncover")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

const CURVE1: &str = r#"{"g":1,"F":"x0^4 - x1^4"}"#;
const PAIR2: &str = r#"{"a":1,"b":1,"P":"0","f":"x0^2 + x1^2","q":"x0^2 - x1^2"}"#;
const FERMAT: [&str; 4] = ["--a", "x0^3 + x1^3 + x2^3", "--F", "x0*x1 + x0*x2 + x1*x2"];

#[test]
fn k3_invariants() {
    let (code, v) = run_json(&["cover", "--n", "3", "--m", "1", "--base", "P2"]);
    assert_eq!(code, 0);
    let r = &v["result"]["invariants"];
    assert_eq!((r["chi"].as_i64(), r["K2"].as_i64(), r["label"].as_str()), (Some(2), Some(0), Some("K3")));
    assert_eq!(v["seed"], 0);
}

#[test]
fn two_torsion_pair() {
    let (code, v) = run_json(&["torsion", "--n", "2", "--curve", CURVE1, "--pair", PAIR2]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["torsion"], true);
    assert_eq!(v["result"]["class_order"], 2);
    let (_, v) = run_json(&["torsion", "--n", "3", "--curve", CURVE1, "--pair", PAIR2]);
    assert_eq!(v["result"]["torsion"], false);
}

#[test]
fn rationals_are_strings() {
    let (_, v) = run_json(&["torsion", "--n", "2", "--curve", CURVE1, "--pair", PAIR2]);
    assert_eq!(v["result"]["class"]["u"], "x + 1/2");
    assert!(v["result"]["matrix"]["entries"][0][0].is_string());
}

#[test]
fn malformed_input_exits_2() {
    let (code, v) = run_json(&["cover", "check", "--n", "3", "--a", "x0^3 + * x1^3", "--F", "x0^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("byte"));
    assert_eq!(run(&["deform", "--n", "three"]).status.code(), Some(2));
    assert_eq!(run(&["torsion", "--n", "2", "--curve", "{g:1}", "--pair", PAIR2]).status.code(), Some(2));
    assert_eq!(run(&["--field", "Fp:100", "deform", "--n", "2", "--m", "1", "--d", "2"]).status.code(), Some(2));
}

#[test]
fn failed_hypotheses_exit_1() {
    let (code, v) = run_json(&["check", "--n", "3", "--a", "x0^3", "--F", "x0^2"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "hypothesis-failed");
    assert_eq!(v["result"]["checks"]["transversal"]["verdict"], "fail");
    let (code, v) = run_json(&["torsion", "--n", "2", "--curve", CURVE1, "--pair", r#"{"a":1,"b":1,"P":"0","f":"x0^2","q":"x1^2"}"#]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "validation");
}

#[test]
fn fermat_check_passes() {
    let mut args = vec!["cover", "check", "--n", "3"];
    args.extend(FERMAT);
    let (code, v) = run_json(&args);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["checks"]["smooth_off_F"]["verdict"], "pass");
    assert_eq!(r["checks"]["transversal"]["verdict"], "pass");
    assert_eq!((r["branch"]["degree"].as_u64(), r["branch"]["cusp_count"].as_u64()), (Some(6), Some(6)));
    assert_eq!(r["dn_epimorphism"]["holds"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--seed", "17", "--field", "Fp:101", "jacobian", "random-pair", "--curve", r#"{"g":2,"F":"x0^6 - x1^6"}"#, "--count", "4"],
        vec!["--seed", "5", "--field", "Fp:31", "check", "--n", "3", FERMAT[0], FERMAT[1], FERMAT[2], FERMAT[3]],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["seed"].as_u64(), Some(args[1].parse().unwrap()));
    }
}

#[test]
fn reports_round_trip() {
    for args in [
        vec!["deform", "--n", "3", "--m", "1", "--d", "2"],
        vec!["dn-table", "--n", "4", "--m", "1"],
        vec!["cover", "--n", "5", "--m", "1"],
        vec!["torsion", "--n", "2", "--curve", CURVE1, "--pair", PAIR2],
    ] {
        let out = run(&args);
        let text = String::from_utf8(out.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }
}

#[test]
fn pairs_and_classes_round_trip() {
    let curve = r#"{"g":2,"F":"x0^6 - x1^6"}"#;
    let (_, v) = run_json(&["--seed", "3", "--field", "Fp:101", "jacobian", "random-pair", "--curve", curve, "--count", "3"]);
    for item in v["result"]["pairs"].as_array().unwrap() {
        let pair = item["pair"].to_string();
        let (code, n) = run_json(&["--field", "Fp:101", "pic", "normalize", "--curve", curve, "--pair", &pair]);
        assert_eq!(code, 0);
        assert_eq!(n["result"]["pair"], item["pair"]);
        let class = item["class"].to_string();
        let (_, back) = run_json(&["--field", "Fp:101", "jacobian", "to-pair", "--curve", curve, "--class", &class]);
        let (_, again) = run_json(&["--field", "Fp:101", "jacobian", "from-pair", "--curve", curve, "--pair", &back["result"]["pair"].to_string()]);
        assert_eq!(again["result"]["class"], item["class"]);
        let (_, iso) = run_json(&["--field", "Fp:101", "pic", "iso", "--curve", curve, "--pair", &pair, "--pair2", &back["result"]["pair"].to_string()]);
        assert_eq!(iso["result"]["isomorphic"], true);
    }
}

#[test]
fn deform_report() {
    let (_, v) = run_json(&["deform", "--n", "2", "--m", "1", "--d", "2"]);
    let r = &v["result"];
    assert_eq!((r["target"].as_u64(), r["source"].as_u64(), r["lower_bound"].as_i64()), (Some(26), Some(24), Some(2)));
    assert_eq!(r["h1_vanishing"]["vanishes"], true);
    let (_, v) = run_json(&["deform", "--n", "3", "--m", "1", "--d", "2"]);
    assert_eq!(v["result"]["h1_vanishing"]["offenders"][0]["summand"], "Theta(-3)");
}

#[test]
fn dn_table_dimensions() {
    let (_, v) = run_json(&["dn-table", "--n", "6"]);
    let dims: u64 = v["result"]["table"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap().pow(2)).sum();
    assert_eq!(dims, 12);
    assert_eq!(v["result"]["orthogonality_verified"], true);
}

#[test]
fn batch_keeps_input_order() {
    let jobs = json!([
        {"command": "deform", "input": {"n": 2, "m": 1, "d": 2}},
        {"command": "cover", "input": {"n": 3, "m": 1}, "seed": 9},
        {"command": "torsion", "input": {"n": 2, "curve": {"g": 1, "F": "x0^4 - x1^4"}, "pair": serde_json::from_str::<Value>(PAIR2).unwrap()}},
        {"command": "check", "input": {"n": 3, "a": "x0^3", "F": "x0^2"}},
        {"command": "frobnicate"},
    ]);
    let mut file = tempfile();
    file.1.write_all(jobs.to_string().as_bytes()).unwrap();
    let (code, v) = run_json(&["--seed", "4", "--json", file.0.to_str().unwrap()]);
    assert_eq!(code, 2);
    let out = v.as_array().unwrap();
    assert_eq!(out.len(), 5);
    assert_eq!(out[0]["result"]["target"], 26);
    assert_eq!((out[0]["seed"].as_u64(), out[1]["seed"].as_u64()), (Some(4), Some(9)));
    assert_eq!(out[1]["result"]["invariants"]["label"], "K3");
    assert_eq!(out[2]["result"]["torsion"], true);
    assert_eq!(out[3]["status"], "hypothesis-failed");
    assert_eq!(out[4]["error"]["kind"], "usage");
    std::fs::remove_file(&file.0).unwrap();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("dncover-batch-{}.json", std::process::id()));
    let f = std::fs::File::create(&path).unwrap();
    (path, f)
}
