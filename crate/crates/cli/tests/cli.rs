use std::process::{Command, Output};

use serde_json::Value;

fn relcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcat")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn passing_suite_writes_the_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s2.json");
    let out = relcat(&["verify", "--suite", "S2", "--instances", "3", "--seed", "7", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "S2");
    assert_eq!(report["seed"], 7);
    assert!(report["params"].is_object());
    let instances = report["instances"].as_array().unwrap();
    assert_eq!(instances.len(), 3);
    for i in instances {
        assert!(i["sub_seed"].is_u64() && i["millis"].is_u64());
        for v in i["verdicts"].as_array().unwrap() {
            assert_eq!(v["verdict"], "PASS");
            assert!(v["check"].is_string() && v["detail"].is_string());
        }
    }
}

#[test]
fn reruns_match_apart_from_timing() {
    let run = || {
        let out = relcat(&["verify", "--suite", "S5", "--instances", "5", "--seed", "3", "--format", "json"]);
        assert_eq!(code(&out), 0);
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        for i in v["instances"].as_array_mut().unwrap() {
            i["millis"] = Value::from(0);
        }
        serde_json::to_vec(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn shallow_truncation_exits_inconclusive() {
    let out = relcat(&["verify", "--suite", "S6", "--instances", "2", "--trunc-p", "1"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stdout).contains("INCONCLUSIVE"));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(code(&relcat(&["verify", "--suite", "S9"])), 2);
    assert_eq!(code(&relcat(&["verify", "--suite", "S4", "--no-acyclic"])), 2);
    assert_eq!(code(&relcat(&["verify", "--suite", "S1", "--max-obj", "0"])), 2);
    assert_eq!(code(&relcat(&["verify", "--suite", "S1", "--bogus"])), 2);
    assert_eq!(code(&relcat(&["replay", "--suite", "S5", "/nonexistent/input"])), 2);
}

#[test]
fn replay_of_a_broken_set_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    // s_0 of vertex 1 lands on an edge whose d_0 is vertex 0
    std::fs::write(&path, "sset 1\nsizes 2 2\nface 1 0 0 1\nface 1 1 0 1\ndegen 0 0 0 0\nend\n").unwrap();
    let out = relcat(&["replay", "--suite", "S5", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL"));
}

#[test]
fn replay_of_a_circle_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.txt");
    let circle = relcat_core::simp::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]], 2).set;
    std::fs::write(&path, relcat_core::harness::text::write_simplicial_set(&circle)).unwrap();
    let out = relcat(&["replay", "--suite", "S5", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}
