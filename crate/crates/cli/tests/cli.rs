//! Exit-code and report-shape contract of the `pvforge` binary.

use std::path::PathBuf;
use std::process::Command;

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../specs/{name}"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_pvforge"))
        .args(args)
        .output()
        .expect("spawn pvforge");
    (
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn passing_document_exits_zero() {
    let path = spec_path("log.json");
    let (stdout, stderr, code) = run(&["compare", path.to_str().unwrap()]);
    assert_eq!(code, 0, "stdout:\n{stdout}\nstderr:\n{stderr}");
    assert!(stdout.starts_with("pvforge-report/1\n"));
    assert!(stdout.contains("result: pass — pv dim 1, hull dim 1, transport verified"));
    assert!(stderr.contains("elapsed-ms:"), "timing goes to stderr");
    assert!(!stdout.contains("elapsed"), "no timing on stdout");
}

#[test]
fn mathematical_failure_exits_two_with_witness() {
    let path = spec_path("broken.json");
    let (stdout, _, code) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stdout.contains("result: fail"));
    // Witness coordinates are 1-based.
    assert!(
        stdout.contains("entry (1, 1)"),
        "missing witness in:\n{stdout}"
    );
}

#[test]
fn missing_file_exits_one() {
    let (stdout, stderr, code) = run(&["check", "/nonexistent/never.json"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.contains("error:"));
    assert!(stderr.contains("/nonexistent/never.json"));
}

#[test]
fn malformed_expression_names_file_line_and_expression() {
    let dir = std::env::temp_dir().join("pvforge-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-expr.json");
    std::fs::write(
        &path,
        r#"{
  "format": "pvforge-spec/1",
  "derivations": 1,
  "base": [{"name": "x", "rules": ["1"]}],
  "generators": [{"name": "e", "rules": ["e +"]}]
}
"#,
    )
    .unwrap();
    let (stdout, stderr, code) = run(&["taylor", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.contains("bad-expr.json"), "stderr:\n{stderr}");
    assert!(stderr.contains(":5:"), "line number expected in:\n{stderr}");
    assert!(stderr.contains("e +"), "offending expression in:\n{stderr}");
}

#[test]
fn unknown_format_tag_is_an_input_error() {
    let dir = std::env::temp_dir().join("pvforge-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-format.json");
    std::fs::write(
        &path,
        r#"{"format": "pvforge-spec/9", "base": [{"name": "x", "rules": ["1"]}]}"#,
    )
    .unwrap();
    let (_, stderr, code) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("pvforge-spec/9"));
}

#[test]
fn json_report_is_valid_json_and_marks_failure() {
    let path = spec_path("broken.json");
    let (stdout, _, code) = run(&["check", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["format"], "pvforge-report/1");
    assert_eq!(v["passed"], false);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn order_flag_changes_the_truncation() {
    let path = spec_path("exp.json");
    let (stdout, _, code) = run(&["bmatrix", path.to_str().unwrap(), "--order", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order: 4"));
    assert!(stdout.contains("1/24*X^4"));
    assert!(!stdout.contains("X^5"));
}

#[test]
fn tower_only_document_rejects_system_subcommands() {
    let path = spec_path("pi_constants.json");
    let (_, stderr, code) = run(&["bmatrix", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("needs a linear system"), "stderr:\n{stderr}");
}
