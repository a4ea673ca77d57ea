use std::process::{Command, Output};

use serde_json::Value;

fn cb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cb")).args(args).output().expect("run cb")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn rank_of_six_level_one_weights() {
    // one conformal block for six weights 1 at level 1
    let out = cb(&["rank", "--level", "1", "--weights", "1,1,1,1,1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn degree_and_intersection() {
    let deg = cb(&["degree4", "--level", "2", "--weights", "1,1,2,2"]);
    let int = cb(&["intersect", "--level", "2", "--weights", "1,1,2,2", "--parts", "1|2|3|4"]);
    assert!(deg.status.success() && int.status.success());
    assert_eq!(stdout(&deg), stdout(&int));
    // at level 1 each pair {1,2}, {3,4} fuses only to weight 0, so the degree factor vanishes
    let out = cb(&["intersect", "--level", "1", "--weights", "1,1,1,1,1,1", "--parts", "1,2|3,4|5|6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn symmetric_class_prints_the_ray() {
    let out = cb(&["symclass", "--n", "9", "--level", "2", "--weights", "2,2,2,2,2,2,2,1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3 3 4");
}

#[test]
fn symmetric_class_checks_the_point_count() {
    let out = cb(&["symclass", "--n", "8", "--level", "2", "--weights", "2,2,2,2,2,2,2,1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn extremal_certificate_is_json() {
    let out = cb(&["extremal", "--n", "9", "--symmetric", "1,1,2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matrix_rank"], 218);
    assert_eq!(v["picard_rank"], 219);
    assert_eq!(v["is_extremal"], true);
}

#[test]
fn class_in_the_nonadjacent_basis() {
    let out = cb(&["class", "--level", "1", "--weights", "1,1,1,1,1,1", "--basis", "nonadjacent6"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 16);
}

#[test]
fn polytope_agrees_with_intersection() {
    for parts in ["1,2|3,4|5|6", "1,2,3|4|5|6", "1,4|2,5|3|6"] {
        for weights in ["1,1,1,1,1,1", "2,1,1,2,1,1", "3,3,2,2,1,1"] {
            let poly = cb(&["polytope", "--level", "3", "--weights", weights, "--parts", parts]);
            let v: Value = serde_json::from_slice(&poly.stdout).unwrap();
            let int = cb(&["intersect", "--level", "3", "--weights", weights, "--parts", parts]);
            let value: u64 = stdout(&int).trim().parse().unwrap();
            assert_eq!(v["positive"], value > 0, "{weights} on {parts}");
        }
    }
}

#[test]
fn verify_reports_use_the_shared_schema() {
    let out = cb(&["verify", "theorem-n6", "--max-level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["config", "counts", "violations", "skipped"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(cb(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cb(&["rank", "--level", "1"]).status.code(), Some(1));
    assert_eq!(cb(&["rank", "--level", "1", "--weights", "2,1,1"]).status.code(), Some(1));
    assert_eq!(cb(&["intersect", "--level", "1", "--weights", "1,1,1,1,1,1", "--parts", "1,2|3"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["search", "--n", "8", "--max-level", "3"];
    let a = cb(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_cb")).args(args).env("CB_THREADS", "1").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn emit_writes_a_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cross.csv");
    let out = cb(&["emit", "--max-level", "2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("level,weights,a2,a3,a4,x,y"));
    assert!(lines.any(|l| l.starts_with("2,\"1,1,2,2,2,2,2,2,2\",3,3,4,3/10,2/5,")));
}

#[test]
fn search_writes_json_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rays.json");
    let out = cb(&["search", "--n", "6", "--max-level", "2", "--nontrivial", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
}

#[test]
fn bad_thread_count_is_a_domain_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_cb"))
        .args(["rank", "--level", "1", "--weights", "1,1"])
        .env("CB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
