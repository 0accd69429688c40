//! Black-box tests of the binary: exit codes and seed determinism.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvirank"))
}

fn file_with(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const X2Y: &str = r#"{"nvars":3,"degree":3,"terms":[[[2,1,0],"1"]]}"#;
const XAXIS_JET: &str = r#"{"nvars":3,"components":[{"curve":[["1","0"],["0","1"],["0","0"]],"t":"0","e":2}]}"#;

#[test]
fn decompose_x2y_three_terms() {
    let form = file_with(X2Y);
    let scheme = file_with(XAXIS_JET);
    let out = run(&[
        "decompose",
        "--form",
        form.path().to_str().unwrap(),
        "--scheme",
        scheme.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["decomposition"]["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["bound_report"]["bound"], 3);
}

#[test]
fn decompose_single_point_scheme() {
    // x^3 through the single support point of an order-1 jet
    let form = file_with(r#"{"nvars":3,"degree":3,"terms":[[[3,0,0],"1"]]}"#);
    let scheme = file_with(
        r#"{"nvars":3,"components":[{"curve":[["1","0"],["0","1"],["0","0"]],"t":"0","e":1}]}"#,
    );
    let out = run(&[
        "decompose",
        "--form",
        form.path().to_str().unwrap(),
        "--scheme",
        scheme.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["decomposition"]["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_3_when_not_in_span() {
    // z^3 is nowhere near the span of a jet on the x-axis
    let form = file_with(r#"{"nvars":3,"degree":3,"terms":[[[0,0,3],"1"]]}"#);
    let scheme = file_with(XAXIS_JET);
    let out = run(&[
        "decompose",
        "--form",
        form.path().to_str().unwrap(),
        "--scheme",
        scheme.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_2_on_malformed_input() {
    let form = file_with("{ not json");
    let scheme = file_with(XAXIS_JET);
    let out = run(&[
        "decompose",
        "--form",
        form.path().to_str().unwrap(),
        "--scheme",
        scheme.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_deterministic() {
    let a = run(&["generate", "--n", "2", "--d", "4", "--k", "3", "--seed", "7"]);
    let b = run(&["generate", "--n", "2", "--d", "4", "--k", "3", "--seed", "7"]);
    let c = run(&["generate", "--n", "2", "--d", "4", "--k", "3", "--seed", "8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same seed must give byte-identical output");
    assert_ne!(a.stdout, c.stdout, "different seeds must differ");
}

#[test]
fn verify_small_batch() {
    let out = run(&[
        "verify", "--trials", "6", "--n", "2", "--d", "3,4", "--k", "1,3", "--seed", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], 6);
    assert_eq!(v["fail"], 0);
}

#[test]
fn ternary_subcommands() {
    // degree-4 jet on the standard conic
    let scheme = file_with(
        r#"{"components":[{"type":"jet","curve":[["1","0","0"],["0","1","0"],["0","0","1"]],"t":"0","e":4}]}"#,
    );
    let out = run(&["ternary", "curve", "--scheme", scheme.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["rational_irreducible"], true);

    let fat = file_with(r#"{"components":[{"type":"fat","point":["1","0","0"]}]}"#);
    let out = run(&["ternary", "conic", "--scheme", fat.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["smooth_conic"].is_null());

    let out = run(&["ternary", "bound", "--d", "5", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["span_dim"], 14);
    assert_eq!(v["bound"], 15);
}

#[test]
fn binary_rank_anchor() {
    let form = file_with(r#"{"nvars":2,"degree":4,"terms":[[[2,2],"1"]]}"#);
    let out = run(&["binary-rank", "--form", form.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["border_rank"], 3);
}
