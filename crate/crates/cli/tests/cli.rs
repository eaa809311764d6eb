use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bianchi")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn reduce_sharpness_witness() {
    let out = run(&["reduce", "--d", "1", "--z", "7/4", "0", "--t", "1/4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["D_sq"], "16/1");
    assert_eq!(v["bound_ok"], true);
    assert_eq!(v["branch"], "general");
    // the reduced point lies in F_1
    let img = &v["image"];
    let m = run(&[
        "membership", "--d", "1", "--z", img["z"]["A"].as_str().unwrap(), img["z"]["B"].as_str().unwrap(),
        "--t2", img["s"].as_str().unwrap(),
    ]);
    assert_eq!(json(&m)["in_F"], true);
}

#[test]
fn reduce_identity_and_general_point() {
    let v = json(&run(&["reduce", "--d", "2", "--z", "0", "0", "--t2", "4"]));
    assert_eq!(v["branch"], "already_in_F");
    assert_eq!(v["gamma"]["alpha"], serde_json::json!([1, 0]));
    assert_eq!(v["height_sq"], "1");
    let out = run(&["reduce", "--d", "5", "--z", "1/3", "1/7", "--t2", "1/50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["bound_ok"], true);
    let out = run(&["reduce", "--d", "3", "--z", "-5/2", "-1/10", "--t2", "1/7"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["reduce", "--d", "4", "--z", "0", "0", "--t2", "1"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--d", "-1", "--z", "0", "0", "--t2", "1"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--d", "1", "--z", "0.5", "0", "--t2", "1"]).status.code(), Some(3));
    assert_eq!(run(&["reduce", "--d", "1", "--z", "1/0", "0", "--t2", "1"]).status.code(), Some(3));
    assert_eq!(run(&["reduce", "--d", "1", "--z", "0", "0", "--t2", "-1"]).status.code(), Some(3));
    assert_eq!(
        run(&["reduce-form", "--d", "1", "--a", "1", "--b", "1", "1", "--dd", "1"]).status.code(),
        Some(4)
    );
    assert_eq!(run(&["count", "--d", "1", "--tsq"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--d", "1", "--tsq", "0"]).status.code(), Some(2));
}

#[test]
fn reduce_form() {
    let out = run(&["reduce-form", "--d", "1", "--a", "2", "--b", "0", "1", "--dd", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["discriminant"], 1);
    assert_eq!(v["form_bound_ok"], true);
    let v = json(&run(&["reduce-form", "--d", "2", "--a", "1", "--b", "0", "0", "--dd", "1"]));
    assert_eq!(v["gamma"]["alpha"], serde_json::json!([1, 0]));
    assert_eq!(v["f_red"], serde_json::json!({"a": 1, "b": [0, 0], "dd": 1}));
}

#[test]
fn count_table_and_fit() {
    let out = run(&["count", "--d", "1", "--tsq", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T_sq,N,N_tilde,X"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[3], "6");

    let out = run(&["count", "--d", "2", "--tsq", "4,9,16,25,36", "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let fit: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(fit["rows"], 5);
    assert!(fit["slope_N"].as_f64().unwrap() > 3.0);
    let sl2 = run(&["count", "--d", "2", "--tsq", "4", "--sl2"]);
    let psl = run(&["count", "--d", "2", "--tsq", "4"]);
    let n = |o: &Output| -> u64 {
        String::from_utf8(o.stdout.clone()).unwrap().lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap()
    };
    assert_eq!(n(&sl2), 2 * n(&psl));
}

#[test]
fn sharpness_rows() {
    let out = run(&["sharpness", "--n-max", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,height_sq,D_sq,ratio");
    assert_eq!(lines[1], "2,9,16/1,3/16");
    assert_eq!(lines[9], "10,9801,400/1,99/400");
    assert_eq!(run(&["sharpness", "--n-max", "1"]).status.code(), Some(2));
}

#[test]
fn certificates_verify_round_trip() {
    for args in [
        ["reduce", "--d", "1", "--z", "7/4", "0", "--t", "1/4"],
        ["reduce", "--d", "7", "--z", "13/5", "-2/3", "--t2", "1/30"],
        ["reduce", "--d", "19", "--z", "-3", "1/2", "--t2", "2/9"],
    ] {
        let out = run(&args);
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(&out.stdout).unwrap();
        let v = run(&["verify", file.path().to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0));
        let v = json(&v);
        assert_eq!(v["verified"], true);
        assert_eq!(v["bound_ok"], true);
    }
}

#[test]
fn tampered_certificate_fails() {
    let out = run(&["reduce", "--d", "1", "--z", "7/4", "0", "--t", "1/4"]);
    let mut v = json(&out);
    v["height_sq"] = Value::String("1".into());
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(v.to_string().as_bytes()).unwrap();
    let out = run(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(json(&out)["verified"], false);
}

#[test]
fn output_is_deterministic() {
    let args = ["reduce", "--d", "3", "--z", "11/4", "5/3", "--t2", "1/40"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
