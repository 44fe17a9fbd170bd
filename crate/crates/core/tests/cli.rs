//! End-to-end tests of the installed binary: real files, real process,
//! real exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const TWO_BASINS: &str = "# two independent basins\nstates x y z t\nx y 3\ny x 2\nz t 9\nt z 6\n";
const TWO_BASINS_JSON: &str = r#"{
  "states": ["x", "y", "z", "t"],
  "arcs": [
    {"from": "x", "to": "y", "exp": 3},
    {"from": "y", "to": "x", "exp": 2},
    {"from": "z", "to": "t", "exp": 9},
    {"from": "t", "to": "z", "exp": 6}
  ]
}
"#;
const ESCAPE: &str = "states x y z\nx y 1\ny x 2\nz y 0\n";

const REPORT: &str = "stable: x z\n\
                      y vanishes depth=1 timescale=eps^-2\n\
                      t vanishes depth=2 timescale=eps^-6\n";

fn write_input(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn analyze(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochstab"))
        .arg("analyze")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn prints_the_report_for_a_terse_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "basins.graph", TWO_BASINS);
    let output = analyze(&[&file]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), REPORT);
    assert!(output.stderr.is_empty());
}

#[test]
fn json_and_terse_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let terse = write_input(dir.path(), "basins.graph", TWO_BASINS);
    let json = write_input(dir.path(), "basins.json", TWO_BASINS_JSON);
    let from_terse = analyze(&["--trace", &terse]);
    let from_json = analyze(&["--trace", &json]);
    assert_eq!(from_terse.status.code(), Some(0));
    assert_eq!(from_json.status.code(), Some(0));
    assert_eq!(from_terse.stdout, from_json.stdout);
}

#[test]
fn self_loop_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "loop.graph", "states x y\nx x 1\n");
    let output = analyze(&[&file]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("self-loop"), "stderr: {}", stderr(&output));
}

#[test]
fn empty_state_list_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "empty.json", r#"{"states": [], "arcs": []}"#);
    let output = analyze(&[&file]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("no states declared"), "stderr: {}", stderr(&output));
}

#[test]
fn missing_file_is_an_input_error() {
    let output = analyze(&["/nonexistent/input.graph"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(!output.stderr.is_empty());
}

#[test]
fn verify_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "escape.graph", ESCAPE);
    let output = analyze(&["--verify", &file]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let out = stdout(&output);
    assert!(out.contains("verify: abstract oracle agrees: stable = y"), "stdout: {out}");
    assert!(out.contains("verify: numerical oracle agrees"), "stdout: {out}");
}

#[test]
fn tiny_cap_exits_with_code_three() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "escape.graph", ESCAPE);
    let output = analyze(&["--verify", "--cap", "1", &file]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stderr(&output).contains("brute-force cap"), "stderr: {}", stderr(&output));
}

#[test]
fn non_decreasing_epsilons_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "escape.graph", ESCAPE);
    let output = analyze(&["--verify", "--epsilons", "1e-3,1e-2", &file]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("strictly decreasing"), "stderr: {}", stderr(&output));
}

#[test]
fn json_output_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "basins.graph", TWO_BASINS);
    let args = ["--json", "--trace", "--verify", file.as_str()];
    let first = analyze(&args);
    let second = analyze(&args);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", stderr(&first));
    assert_eq!(first.stdout, second.stdout);

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["stable"], serde_json::json!(["x", "z"]));
    assert_eq!(doc["vanished"][0]["states"], serde_json::json!(["y"]));
    assert_eq!(doc["vanished"][0]["depth"], serde_json::json!(1));
    assert_eq!(doc["vanished"][0]["timescale"], serde_json::json!("eps^-2"));
    assert_eq!(doc["trace"].as_array().unwrap().len(), 3);
    assert_eq!(doc["verification"]["abstract"]["agrees"], serde_json::json!(true));
    assert_eq!(doc["verification"]["numeric"]["agrees"], serde_json::json!(true));
}

#[test]
fn dot_flag_writes_one_file_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_input(dir.path(), "basins.graph", TWO_BASINS);
    let dot_dir = dir.path().join("dot");
    let output = analyze(&["--dot", dot_dir.to_str().unwrap(), &file]);
    assert_eq!(output.status.code(), Some(0));
    let level1 = fs::read_to_string(dot_dir.join("level-1.dot")).unwrap();
    assert!(level1.starts_with("digraph level_1 {"));
    assert!(level1.contains("style=bold"), "level 1 has a weight-one arc: {level1}");
    assert!(dot_dir.join("level-3.dot").exists());
    assert!(!dot_dir.join("level-4.dot").exists());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let output = analyze(&["--frobnicate", "input.graph"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let output = Command::new(env!("CARGO_BIN_EXE_stochstab"))
        .arg("--help")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("analyze"));
}
