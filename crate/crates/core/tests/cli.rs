use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn einres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_einres")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

const CONSTANT_CURVATURE: &str = r#"{
  "m": 2,
  "riemann": [
    {"indices": [1,2,1,2], "value": 1}, {"indices": [1,3,1,3], "value": 1},
    {"indices": [1,4,1,4], "value": 1}, {"indices": [2,3,2,3], "value": 1},
    {"indices": [2,4,2,4], "value": 1}, {"indices": [3,4,3,4], "value": 1}
  ],
  "v": {"value": [1, 0, 0, 0]},
  "w": {"value": [1, 0, 0, 0]},
  "tEval": ["1/2", "0"]
}"#;

#[test]
fn verify_constant_curvature() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "cc.json", CONSTANT_CURVATURE);
    let out = einres(&["verify", &file, "--per-term", "--strict-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = &report["cases"][0]["densities"];
    assert_eq!(d["part1"][0], "1/1");
    assert_eq!(d["part2"][0], "-1/2");
    assert_eq!(d["total"][0], "1/2");
    assert_eq!(report["cases"][0]["t_eval"]["total"][0], "1/2");
}

#[test]
fn verify_formats() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "flat.json", r#"{"m": 2}"#);
    let md = einres(&["verify", &file, "--format", "markdown"]);
    assert_eq!(md.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&md.stdout).contains("| quantity | power |"));
    let csv = einres(&["verify", &file, "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("case,kind,name,power"));
}

#[test]
fn invalid_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let conflict = write(dir.path(), "c.json", r#"{"m": 2, "riemann": [{"indices": [1,2,1,2], "value": 1}, {"indices": [2,1,1,2], "value": 1}]}"#);
    let out = einres(&["verify", &conflict]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "symmetry-conflict");

    let bianchi = write(dir.path(), "b.json", r#"{"m": 2, "riemann": [{"indices": [1,2,3,4], "value": 1}]}"#);
    assert_eq!(einres(&["verify", &bianchi]).status.code(), Some(2));
    assert_eq!(einres(&["verify", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(einres(&["lemma", "9.9", &bianchi]).status.code(), Some(2));
}

#[test]
fn strict_paper_turns_findings_into_failures() {
    let lax = einres(&["campaign", "--m", "2", "--seed", "3", "--cases", "2"]);
    assert_eq!(lax.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&lax.stdout).unwrap();
    assert_eq!(report["internal_pass"], true);
    assert_eq!(report["printed_match"], false);
    let strict = einres(&["campaign", "--m", "2", "--seed", "3", "--cases", "2", "--strict-paper"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn campaign_is_byte_identical() {
    let a = einres(&["campaign", "--seed", "42", "--cases", "3", "--format", "csv"]);
    let b = einres(&["campaign", "--seed", "42", "--cases", "3", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_and_lemma() {
    let out = einres(&["selftest", "moments"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "cc.json", CONSTANT_CURVATURE);
    let out = einres(&["lemma", "3.46", &file]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["quantity"], "H4");
    assert_eq!(r["engine"][0], "-4/1");
    assert_eq!(r["matches"], true);
    let one_form: Value = serde_json::from_slice(&einres(&["lemma", "1.3", &file]).stdout).unwrap();
    assert_eq!(one_form["matches"], false);
}
