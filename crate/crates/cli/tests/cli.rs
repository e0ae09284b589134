use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhs")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn rows<'a>(v: &'a Value, quantity: &str) -> Vec<&'a Value> {
    v["rows"].as_array().unwrap().iter().filter(|r| r["quantity"] == quantity).collect()
}

#[test]
fn quintic_instantons() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "quintic.json",
        r#"{"space": {"kind": "projective_product", "dims": [4]}, "bundle": [[5]], "order": 3, "zorder": 2, "eps": null, "command": "gw"}"#,
    );
    let out = qhs(&["--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let n = rows(&v, "n");
    assert_eq!(n[0]["degree"], "1");
    assert_eq!(n[0]["value"], "2875/1");
    assert_eq!(n[1]["value"], "609250/1");
    assert_eq!(rows(&v, "classical")[0]["value"], "5/1");
}

#[test]
fn flag_relations_for_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "f.json", r#"{"space": {"kind": "flag_a", "n": 3}}"#);
    let out = qhs(&["flag-relations", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rels: Vec<_> = v["rows"].as_array().unwrap().iter().filter(|r| r["quantity"].as_str().unwrap().starts_with('I')).collect();
    assert_eq!(rels.len(), 3);
    assert_eq!(rels[1]["value"], "x1*x2 + x1*x3 + x2*x3 + q1 + q2");
    assert_eq!(v["passed"], true);
}

#[test]
fn class_p_on_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p1.json", r#"{"space": {"kind": "projective_product", "dims": [1]}, "order": 3}"#);
    let out = qhs(&["verify-classp", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["value"] == "pass"));
    assert_eq!(v["eps"].as_array().unwrap().len(), 2);
}

#[test]
fn artifacts_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p2.json", r#"{"space": {"kind": "projective_product", "dims": [2]}, "command": "recursion", "order": 2}"#);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let o = qhs(&["--config", &cfg, "--eps-seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for file in ["recursion.json", "recursion.csv"] {
        let x = std::fs::read(a.join(file)).unwrap();
        assert_eq!(x, std::fs::read(b.join(file)).unwrap());
        assert!(!x.is_empty());
    }
    let csv = std::fs::read_to_string(a.join("recursion.csv")).unwrap();
    let v: Value = serde_json::from_slice(&std::fs::read(a.join("recursion.json")).unwrap()).unwrap();
    assert!(csv.starts_with("quantity,degree,value,check"));
    assert_eq!(csv.lines().count(), v["rows"].as_array().unwrap().len() + 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let negative = write_config(dir.path(), "neg.json", r#"{"space": {"kind": "projective_product", "dims": [4]}, "bundle": [[-5]], "command": "gw"}"#);
    let out = qhs(&["--config", &negative]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative degree"));

    let missing = qhs(&["gw", "--config", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    let wrong_space = write_config(dir.path(), "gr.json", r#"{"space": {"kind": "grassmannian", "k": 2, "n": 4}}"#);
    assert_eq!(qhs(&["ifun", "--config", &wrong_space]).status.code(), Some(2));

    let degenerate = write_config(dir.path(), "deg.json", r#"{"space": {"kind": "projective_product", "dims": [2]}, "eps": [0, 1, 2]}"#);
    let out = qhs(&["recursion", "--config", &degenerate, "--order", "3"]);
    assert_eq!(out.status.code(), Some(4));

    let ok = write_config(dir.path(), "ok.json", r#"{"space": {"kind": "grassmannian", "k": 2, "n": 4}}"#);
    let out = qhs(&["oracle", "--config", &ok, "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Euler(Sym^3 S*) [0] = 27/1"));
}
