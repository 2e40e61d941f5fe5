use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../arrangements")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrangements"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("arrangements-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

#[test]
fn classify_plus_one_generated() {
    let o = run(&["classify", &corpus("ex34")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "kind: PlusOneGenerated\npoexp: 1 1 2 2\nlevel: 2\n\
         S/J(A): 0 -> S(-7) -> S(-5)+S(-6)^3 -> S(-4)^4 -> S\n\
         D(A): 0 -> S(-3) -> S(-1)^2+S(-2)^3 -> D(A)\n"
    );
}

#[test]
fn classify_free() {
    let o = run(&["classify", &corpus("boolean3")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("kind: Free\nexponents: 1 1 1\n"));
}

#[test]
fn associated_primes_list_the_embedded_flat() {
    let o = run(&["assoc-primes", &corpus("ex34")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("method: combinatorial\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("rank 2 ")).count(), 10);
    assert!(text.contains("rank 3 {1,2,3,4} <x - y, x - t, y - z>\n"));
}

#[test]
fn betti_table() {
    let o = run(&["betti", &corpus("boolean3")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("0 -> S(-3)^2 -> S(-2)^3 -> S\n"));
    assert!(text.contains(" total: 1 3 2\n"));
    assert!(text.ends_with("projdim: 2\ndepth: 1\n"));
}

#[test]
fn json_output_parses() {
    for cmd in ["lattice", "betti", "classify", "derivations", "assoc-primes"] {
        let o = run(&["--format", "json", cmd, &corpus("ex34")]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{cmd}: {e}"));
        assert!(v.is_object() || v.is_array(), "{cmd}");
    }
    let o = run(&["--format", "json", "lattice", &corpus("boolean3")]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!([1, 3, 3, 1]));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["classify", "assoc-primes", "derivations"] {
        let a = run(&["--format", "json", cmd, &corpus("ex35")]);
        let b = run(&["--format", "json", cmd, &corpus("ex35")]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn parse_errors_exit_2() {
    let bad = scratch("truncated.json", "{\"format_version\":1,\"forms\":[[1,2");
    let o = run(&["classify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = run(&["classify", "/nonexistent/arrangement.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_3() {
    let o = run(&["restrict", &corpus("boolean3"), "--hyperplane", "9"]);
    assert_eq!(o.status.code(), Some(3));
    let cands = scratch("not-logarithmic.txt", "x, 0, 0\n0, y, 0\n0, 0, x\n");
    let o = run(&["saito-verify", &corpus("boolean3"), "--candidates", &cands]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "derivation 2 is not logarithmic\n");
}

#[test]
fn saito_accepts_a_basis() {
    let cands = scratch("boolean-basis.txt", "# Euler-type basis\nx, 0, 0\n0, y, 0\n0, 0, z\n");
    let o = run(&["saito-verify", &corpus("boolean3"), "--candidates", &cands]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "candidates derivations: basis\n");
}

#[test]
fn timeout_exits_4() {
    let o = run(&["--timeout", "0", "classify", &corpus("ex45")]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_theorems_on_an_empty_corpus() {
    let o = run(&["verify-theorems", "--count", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 instances, 0 checks, 0 violations, 0 errors\n");
    let dir = std::env::temp_dir().join(format!("arrangements-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = run(&["verify-theorems", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_theorems_on_a_file() {
    let o = run(&["--format", "json", "verify-theorems", &corpus("ex34")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["violations"], 0);
    assert_eq!(v["instances"][0]["kind"], "PlusOneGenerated");
}

#[test]
fn deletion_and_restriction_round_trip() {
    let o = run(&["delete", &corpus("boolean3"), "--hyperplane", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["--format", "json", "restrict", &corpus("braid3"), "--hyperplane", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["format_version"], 1);
}
