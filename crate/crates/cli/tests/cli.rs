use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn eohk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eohk")).args(args).output().expect("run eohk")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn hard_set_exits_3_with_reason() {
    let out = eohk(&["classify", &path("six_vertex_111.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("support not affine"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "hard");
    assert_eq!(v["diagnostic"]["signature"], "six_vertex_111");
}

#[test]
fn affine_set_is_tractable_in_both_classes() {
    let out = eohk(&["classify", &path("sigset_affine.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "tractable-affine");
    assert_eq!(v["both_classes"], true);
}

#[test]
fn looped_diseq4_evaluates_to_two() {
    let out = eohk(&["eval", "--mode", "brute", &path("diseq4_loops_13_24.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), r#"{"value":"2"}"#);
}

#[test]
fn every_eval_mode_agrees_on_ring() {
    let file = path("ring_neq4_binary.json");
    let values: Vec<String> = ["auto", "brute", "affine", "product"]
        .iter()
        .map(|m| {
            let out = eohk(&["eval", "--mode", m, &file]);
            assert_eq!(out.status.code(), Some(0), "mode {m}: {}", stderr(&out));
            stdout(&out)
        })
        .collect();
    assert!(values.iter().all(|v| v == &values[0]));
    assert_eq!(values[0], r#"{"value":"2"}"#);
}

#[test]
fn malformed_input_exits_2() {
    let dir = std::env::temp_dir().join(format!("eohk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"arity": 2, "values": [0, 1, 1]}"#).unwrap();
    let out = eohk(&["factor", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("values"));
    let out = eohk(&["classify", &dir.join("missing.json").to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn factor_rebuilds_single_prime() {
    let out = eohk(&["factor", "--ars", &path("neq4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 1);
}

#[test]
fn csp_encoding_has_one_circuit_per_variable() {
    let out = eohk(&["csp2eo", &path("csp_triangle.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["circuits"].as_array().unwrap().len(), 3);
}

#[test]
fn f8_verifies() {
    let out = eohk(&["verify-f8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("verified"));
    let out = eohk(&["verify-f8", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
}

#[test]
fn selftest_passes() {
    let out = eohk(&["selftest", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 13);
}
