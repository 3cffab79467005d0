use std::process::{Command, Output};

use serde_json::Value;

fn hyperweight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperweight"))
        .args(args)
        .env_remove("HYPERWEIGHT_MAX_CELLS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hyperweight(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn params_subcommand() {
    let v = json(&["params", "--q", "4", "--s", "8", "--d", "3"]);
    assert_eq!(v["schema"], "hyperweight/1");
    assert_eq!(v["delta"], 1944);
    assert_eq!(v["ntm"], 2160);
    assert_eq!(v["regime"], "small_d");
    let v = json(&["params", "--q", "5", "--s", "7", "--d", "3", "--experimental"]);
    assert_eq!(v["experimental"]["marker"], "unproven");
}

#[test]
fn weight_writes_codeword_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("word.csv");
    let v = json(&["weight", "--q", "4", "--s", "3", "--f", "t1*t2 + t3", "--out", path.to_str().unwrap()]);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 27);
    assert_eq!(v["length"], 27);
    assert_eq!(v["weight"].as_u64().unwrap() + v["zeros"].as_u64().unwrap(), 27);
}

#[test]
fn classify_subcommand() {
    let v = json(&["classify", "--q", "4", "--s", "8", "--d", "3", "--f", "(t1-t3)*(t2-t4)*(t5-t6+t7-t8)"]);
    assert_eq!(v["lower_bound"], 2160);
    assert_eq!(v["pivots"][2]["class"]["tag"], "M4");
}

#[test]
fn spectrum_subcommand_and_csv() {
    let out = hyperweight(&["spectrum", "--q", "4", "--s", "4", "--d", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min_nonzero,54"), "{text}");
    assert!(text.contains("second_nonzero,60"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(hyperweight(&["params", "--q", "6", "--s", "4", "--d", "3"]).status.code(), Some(2));
    assert_eq!(hyperweight(&["weight", "--q", "4", "--s", "3", "--f", "t9"]).status.code(), Some(2));
    assert_eq!(hyperweight(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hyperweight(&["spectrum", "--q", "4", "--s", "8", "--d", "3"]).status.code(), Some(3));
    let gated = Command::new(env!("CARGO_BIN_EXE_hyperweight"))
        .args(["weight", "--q", "4", "--s", "8", "--f", "t1"])
        .env("HYPERWEIGHT_MAX_CELLS", "10")
        .output()
        .unwrap();
    assert_eq!(gated.status.code(), Some(3));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["spectrum", "--q", "4", "--s", "8", "--d", "3", "--samples", "300", "--seed", "9"];
    assert_eq!(hyperweight(&args).stdout, hyperweight(&args).stdout);
}
