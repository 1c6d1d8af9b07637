use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spcpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spcpc"))
        .args(args)
        .env_remove("SPCPC_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    panic!("{name}: {msgs:?}\n{v}");
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn frozen_set_output_is_exact() {
    let out = spcpc(&["construct", "--dims", "3,3", "--emit", "frozen"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"frozen\":[1,2,3,4,7]}\n");
    let echo: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(echo["config"]["dims"], serde_json::json!([3, 3]));
}

#[test]
fn usage_and_runtime_exit_codes() {
    assert_eq!(spcpc(&[]).status.code(), Some(2));
    assert_eq!(spcpc(&["construct", "--dims", "3,3", "--nope"]).status.code(), Some(2));
    assert_eq!(spcpc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(spcpc(&["construct", "--dims", "1,3"]).status.code(), Some(1));
    assert_eq!(spcpc(&["threshold", "--family", "self-similar", "--m", "5"]).status.code(), Some(1));
    assert_eq!(spcpc(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_match_schemas() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("construct", vec!["construct", "--dims", "3,3", "--emit", "frozen"]),
        ("construct", vec!["construct", "--dims", "3,3", "--emit", "info"]),
        ("construct", vec!["construct", "--dims", "2,3", "--emit", "generator"]),
        ("construct", vec!["construct", "--dims", "2,3", "--emit", "transform"]),
        ("construct", vec!["construct", "--dims", "5,5,5"]),
        ("encode", vec!["encode", "--dims", "3,3", "--message", "1000"]),
        ("encode", vec!["encode", "--dims", "3,5", "--message", "110100", "--crc", "0x7"]),
        ("decode", vec!["decode", "--dims", "3,3", "--bec", "0???0?000"]),
        ("decode", vec!["decode", "--dims", "3,3", "--bec", "0???0?000", "--decoder", "ml"]),
        ("decode", vec!["decode", "--dims", "3,3", "--llr", "1,-2,0.5,3,3,-1,2,2,2", "--decoder", "scl", "--list-size", "4"]),
        ("decode", vec!["decode", "--dims", "3,3", "--llr", "1,-2,0.5,3,3,-1,2,2,2", "--decoder", "ml"]),
        ("simulate", vec!["simulate", "--dims", "3,3", "--channel", "bec", "--epsilon", "0.2:0.4:0.1", "--max-trials", "500"]),
        ("simulate", vec!["simulate", "--dims", "3,3", "--channel", "bec", "--epsilon", "0.3", "--max-trials", "300", "--record-first-errors"]),
        ("analyze-bec", vec!["analyze", "bec", "--dims", "5,5,5", "--epsilon-grid", "0.05:0.5:0.01"]),
        ("de", vec!["de", "--dims", "3,3", "--ebn0-db", "1:2:0.5"]),
        ("wef", vec!["wef", "--dims", "3,3"]),
        ("iowef", vec!["wef", "--dims", "3,3", "--io"]),
        ("bounds", vec!["bounds", "--dims", "3,3", "--channel", "bec", "--grid", "0.1:0.5:0.1"]),
        ("threshold", vec!["threshold", "--family", "euler", "--a2", "8", "--tol", "1e-3"]),
    ];
    for (name, args) in cases {
        assert_valid(name, &stdout_json(&spcpc(&args)));
    }
}

#[test]
fn wef_coefficients() {
    let v = stdout_json(&spcpc(&["wef", "--dims", "3,3"]));
    assert_eq!(v["coeffs"], serde_json::json!([["0", "1"], ["4", "9"], ["6", "6"]]));
    let big = stdout_json(&spcpc(&["wef", "--dims", "5,5,5"]));
    assert_eq!(big["coeffs"][1], serde_json::json!(["8", "1000"]));
}

#[test]
fn generator_round_trip_through_decode() {
    let gen = spcpc(&["construct", "--dims", "3,4", "--emit", "generator"]);
    let path = tmp("generator_3_4.json");
    std::fs::write(&path, &gen.stdout).unwrap();
    let llr = "1.5,-0.2,0.7,2.0,-1.1,0.3,0.9,1.2,-0.4,0.8,1.7,0.6";
    for decoder in ["sc", "elias", "scl", "ml"] {
        let direct = spcpc(&["decode", "--dims", "3,4", "--llr", llr, "--decoder", decoder]);
        let via = spcpc(&["decode", "--code", path.to_str().unwrap(), "--llr", llr, "--decoder", decoder]);
        assert_eq!(stdout_json(&direct), stdout_json(&via), "{decoder}");
    }
    let mut tampered: Value = serde_json::from_slice(&gen.stdout).unwrap();
    tampered["generator"]["row_hex"][0] = Value::from("000");
    let bad = tmp("generator_bad.json");
    std::fs::write(&bad, tampered.to_string()).unwrap();
    assert_eq!(spcpc(&["decode", "--code", bad.to_str().unwrap(), "--llr", llr]).status.code(), Some(1));
}

#[test]
fn wef_file_feeds_bounds() {
    let path = tmp("wef_3_3.json");
    let out = spcpc(&["wef", "--dims", "3,3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let from_file = stdout_json(&spcpc(&["bounds", "--wef", path.to_str().unwrap(), "--channel", "bawgn", "--grid", "3"]));
    let direct = stdout_json(&spcpc(&["bounds", "--dims", "3,3", "--channel", "bawgn", "--grid", "3"]));
    assert_eq!(from_file, direct);
}

#[test]
fn csv_outputs() {
    let out = spcpc(&["analyze", "bec", "--dims", "3,3", "--epsilon-grid", "0.5", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,eps_max,sum_bound,loose_bound");
    assert!(lines[1].starts_with("0.5,0.228515625,0.541015625"));
    let path = tmp("sim.csv");
    let out = spcpc(&[
        "simulate", "--dims", "3,3", "--channel", "bec", "--epsilon", "1.0", "--max-trials", "20", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x,trials,errors,bler,ci_low,ci_high");
    assert!(csv.lines().nth(1).unwrap().starts_with("1,20,20,1,"));
}

#[test]
fn simulate_ignores_thread_count() {
    let args = [
        "simulate", "--dims", "5,5,5", "--channel", "bawgn", "--ebn0-db", "2:3:0.5", "--decoder", "scl",
        "--list-size", "2", "--max-trials", "600", "--seed", "5",
    ];
    let outputs: Vec<Vec<u8>> = ["1", "4", "16"]
        .iter()
        .map(|t| {
            let mut a = args.to_vec();
            a.extend(["--threads", t]);
            let out = spcpc(&a);
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let env = Command::new(env!("CARGO_BIN_EXE_spcpc"))
        .args(args)
        .env("SPCPC_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, outputs[0]);
    assert!(String::from_utf8_lossy(&env.stderr).contains("\"threads\":3"));
}
