use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn lefthand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefthand"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn lefthand_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lefthand"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn gh(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn goldner_harary_in_at_101() {
    let out = lefthand(&["check", &gh("goldner_harary_101.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "in_L");
    assert_eq!(v["witness"], Value::Null);
    assert_eq!(v["x"]["a"], "101/800");
    assert!(v["bound"]["exact"].as_str().unwrap().contains('/'));
}

#[test]
fn goldner_harary_out_at_102() {
    let path = gh("goldner_harary_102.txt");
    let out = lefthand(&["check", "--format", "edgelist", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "out_of_L");
    assert_eq!(v["witness"], "g");
    assert_eq!(v["bound"], Value::Null);

    let out = lefthand(&["check", "--float", "--format", "edgelist", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["witness"], "g");
}

#[test]
fn four_cycle_is_not_chordal() {
    let path = gh("c4.txt");
    for cmd in ["check", "order", "threshold"] {
        let out = lefthand(&[cmd, "--format", "edgelist", &path]);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
        let v = json_of(&out);
        assert_eq!(v["error"], "not_chordal");
        assert_eq!(v["cycle"].as_array().unwrap().len(), 4);
        for key in ["v", "u", "w"] {
            assert!(v["witness"][key].is_string());
        }
    }
}

#[test]
fn oracle_agrees_and_caps() {
    let path = gh("goldner_harary_101.json");
    let out = lefthand(&["oracle", &path]);
    assert_eq!(out.status.code(), Some(0));
    let checked = json_of(&lefthand(&["check", &path]));
    assert_eq!(json_of(&out)["sigma_empty"], checked["bound"]);

    let out = lefthand(&["oracle", "--cap", "5", &path]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_of(&out)["error"], "cap_exceeded");

    let out = lefthand(&[
        "oracle",
        "--format",
        "edgelist",
        &gh("goldner_harary_102.txt"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["witness"].is_array());
}

#[test]
fn threshold_report() {
    let out = lefthand(&["threshold", &gh("goldner_harary_101.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["critical_vertex"], "g");
    assert_eq!(
        v["poly_coeffs"],
        serde_json::json!([1, -11, 28, -29, 17, -6, 1])
    );
    assert!(v["lo"]["decimal"].as_str().unwrap().starts_with("0.12689"));
}

#[test]
fn order_round_trips_through_check() {
    let path = gh("goldner_harary_101.json");
    let out = lefthand(&["order", &path]);
    assert_eq!(out.status.code(), Some(0));
    let order = json_of(&out);
    assert_eq!(order.as_object().unwrap().len(), 11);

    let dir = std::env::temp_dir().join(format!("lefthand-order-{}", std::process::id()));
    std::fs::write(&dir, out.stdout).unwrap();
    let out = lefthand(&["check", "--order", &dir.to_string_lossy(), &path]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_order_is_invalid_input() {
    let path = gh("goldner_harary_101.json");
    let dir = std::env::temp_dir().join(format!("lefthand-bad-{}", std::process::id()));
    std::fs::write(&dir, "{}").unwrap();
    let out = lefthand(&["check", "--order", &dir.to_string_lossy(), &path]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "invalid_order");
}

#[test]
fn stdin_and_invalid_input() {
    let text = "vertex a 1/2\nvertex b 1/4\na b\n";
    let out = lefthand_stdin(&["check", "--format", "edgelist", "-"], text);
    assert_eq!(out.status.code(), Some(0));

    let out = lefthand_stdin(&["check", "--format", "edgelist", "-"], "vertex a 3/2\n");
    assert_eq!(out.status.code(), Some(2));
    let out = lefthand_stdin(&["check", "-"], "{ not json");
    assert_eq!(out.status.code(), Some(2));
    let out = lefthand(&["check", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lefthand(&["check", "--bogus", "-"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_and_chordal() {
    let args = ["gen", "--n", "12", "--seed", "42", "--max-den", "16"];
    let a = lefthand(&args);
    let b = lefthand(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let graph = String::from_utf8(a.stdout).unwrap();
    let out = lefthand_stdin(&["order", "-"], &graph);
    assert_eq!(out.status.code(), Some(0));

    let out = lefthand(&["gen", "--n", "3", "--p", "1/3", "--format", "edgelist"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with(" 1/3")).count(), 3);
    let out = lefthand(&["gen", "--n", "3", "--p", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
}
