use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudit-swap"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn results_on_stdout_diagnostics_on_stderr() {
    let ok = run(&["decide", "--d", "3"]);
    assert_eq!(ok.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("INFEASIBLE_BY_PARITY"));
    assert!(ok.stderr.is_empty());

    let bad = run(&["decide", "--d", "nope"]);
    assert_eq!(bad.status.code(), Some(64));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());

    let guarded = run(&["group", "--d", "40"]);
    assert_eq!(guarded.status.code(), Some(65));
    assert!(guarded.stdout.is_empty());
}

#[test]
fn search_guard_can_be_raised() {
    let out = run(&["group", "--d", "32", "--max-d", "32"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("order: 24576"));
}

#[test]
fn synth_is_byte_reproducible() {
    let a = run(&["synth", "--d", "5", "--json"]);
    let b = run(&["synth", "--d", "5", "--json", "--bidirectional", "--workers", "3"]);
    assert_eq!(a.status.code(), Some(1));
    let (va, vb): (Value, Value) = (
        serde_json::from_slice(&a.stdout).unwrap(),
        serde_json::from_slice(&b.stdout).unwrap(),
    );
    assert_eq!(va["result"], vb["result"]);
    assert_eq!(run(&["synth", "--d", "5", "--json"]).stdout, a.stdout);
}

#[test]
fn cache_dir_round_trip_and_recovery() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = run(&["group", "--d", "6", "--json", "--cache-dir", cache]);
    assert_eq!(fresh.status.code(), Some(0));
    let path = dir.path().join("census-d6.json");
    let file: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["format"], "qudit-swap/group-census");
    assert_eq!(file["d"], 6);
    assert_eq!(file["census"]["order"], 144);

    let report: Value = serde_json::from_slice(&fresh.stdout).unwrap();
    assert_eq!(report["result"], file["census"]);

    let hit = run(&["group", "--d", "6", "--json", "--cache-dir", cache]);
    assert_eq!(hit.stdout, fresh.stdout);
    assert!(hit.stderr.is_empty());

    fs::write(&path, "garbage").unwrap();
    let recovered = run(&["group", "--d", "6", "--json", "--cache-dir", cache]);
    assert_eq!(recovered.stdout, fresh.stdout);
    assert!(String::from_utf8_lossy(&recovered.stderr).contains("corrupt cache"));
    let rewritten: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rewritten, file);
}

#[test]
fn version_and_help() {
    let v = run(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&v.stdout).contains(env!("CARGO_PKG_VERSION")));
    assert_eq!(run(&["synth", "--help"]).status.code(), Some(0));
}
