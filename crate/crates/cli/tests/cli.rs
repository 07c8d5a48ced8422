use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tricount")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap().trim_end().to_string())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn text_outputs() {
    assert_eq!(run(&["count", "19", "77", "12", "1528"]), (0, "70".into()));
    assert_eq!(run(&["count", "1", "1", "1", "0"]), (0, "1".into()));
    assert_eq!(run(&["correction", "19", "77", "12", "1528"]), (0, "-7/19".into()));
    assert_eq!(run(&["delta", "19", "-1", "7", "8"]), (0, "7/19".into()));
    assert_eq!(run(&["chi", "19", "77", "12", "-5"]), (0, "0".into()));
    assert_eq!(run(&["hj", "19", "12"]), (0, "c=[2,3,2,3] q=[12,5,3,1] qbar=[1,2,5,8]".into()));
    assert_eq!(run(&["lct", "19", "12"]), (0, "7/19".into()));
    assert_eq!(run(&["pick", "61", "9"]), (0, "129/2".into()));
    let (code, out) = run(&["reduce", "1235", "6545", "2652", "1710721"]);
    assert_eq!(code, 0);
    assert!(out.contains("v = (19,77,12)") && out.contains("e = 1528") && out.contains("r = (1,2,3)"));
    let (code, out) = run(&["blache", "19", "12"]);
    assert_eq!(code, 0);
    assert!(out.contains("max |dR| = 12/19 at l = [4,15]"));
}

#[test]
fn explain_follows_the_pipeline() {
    let (code, out) = run(&["count", "19", "77", "12", "1528", "--explain"]);
    assert_eq!(code, 0);
    let order = ["d(d+|w|)/(2 w_bar) = 312476/4389", "R_X(19;77,12)(1528) = -7/19", "R_X(77;19,12)(1528) = -38/77", "R_X(12;19,77)(1528) = -4/3", "R = -9635/4389", "count = 70"];
    let pos: Vec<usize> = order.iter().map(|s| out.find(s).unwrap_or_else(|| panic!("{s}"))).collect();
    assert!(pos.windows(2).all(|p| p[0] < p[1]));
    assert!(out.contains("X(2;1,1) k = 1: local = -1/4"));
}

#[test]
fn json_schema() {
    let v = json(&["count", "19", "77", "12", "1528"]);
    assert_eq!(v["count"], "70");
    let v = json(&["correction", "19", "77", "12", "1528"]);
    assert_eq!(v["value"]["num"], "-7");
    assert_eq!(v["value"]["den"], "19");
    let v = json(&["count", "1235", "6545", "2652", "1710721", "--explain"]);
    assert_eq!(v["reduction"]["v"], serde_json::json!(["19", "77", "12"]));
    assert_eq!(v["correction"]["num"], "-9635");
    let v = json(&["hj", "19", "12"]);
    assert_eq!(v["c"], serde_json::json!(["2", "3", "2", "3"]));
    assert_eq!(v["canonical"][0]["num"], "-6");
    let v = json(&["blache", "19", "12"]);
    assert_eq!(v["diff_rows"].as_array().unwrap().len(), 18);
    let v = json(&["count", "1", "1", "1", "1000000000000000000000"]);
    assert_eq!(v["count"], "500000000000000000001500000000000000000001");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "19", "77"]).0, 2);
    assert_eq!(run(&["count", "a", "1", "1", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["correction", "6", "2", "1", "1"]).0, 3);
    assert_eq!(run(&["count", "0", "1", "1", "1"]).0, 3);
    assert_eq!(run(&["hj", "12", "8"]).0, 3);
    assert_eq!(run(&["chi", "2", "2", "3", "4"]).0, 3);
}

#[test]
fn verify_and_bench() {
    assert_eq!(run(&["verify", "--max-weight", "30", "--max-degree", "500", "--seed", "7", "--cases", "300"]).0, 0);
    assert_eq!(run(&["verify", "--max-weight", "1"]).0, 0);
    assert_eq!(run(&["verify", "--cases", "200", "--mutate", "quad-sign"]).0, 1);
    let (code, out) = run(&["bench", "--fib", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("(8, 5)  steps = 4  euclid = 4"));
    let (code, out) = run(&["bench", "--random", "--max-weight", "1000000", "--degree", "1000000000000", "--samples", "20"]);
    assert_eq!(code, 0);
    assert!(out.contains("ns per call"));
    let (code, out) = run(&["bench", "--random", "--max-weight", "50", "--degree", "2000", "--samples", "20"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 mismatches"), "{out}");
}
