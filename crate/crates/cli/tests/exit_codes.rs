use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hrl-exit-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn hrl(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hrl"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

#[test]
fn usage_and_io_errors_exit_2() {
    let dir = scratch("usage");
    assert_eq!(hrl(&dir, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(hrl(&dir, &["mc-exact", "--r", "2"]).status.code(), Some(2));
    assert_eq!(hrl(&dir, &["mc-exact", "--graph", "missing.hg", "--r", "2"]).status.code(), Some(2));
    std::fs::write(dir.join("bad.hg"), "3 5 1\n0 1\n").unwrap();
    let out = hrl(&dir, &["mc-exact", "--graph", "bad.hg", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.hg:2"));
    assert_eq!(hrl(&dir, &["verify", "--suite", "nope"]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn failed_checks_exit_1() {
    let dir = scratch("fail");
    // ε beyond the validity window of 4.1
    let out = hrl(&dir, &["bounds", "eval", "--theorem", "4.1", "--k", "3", "--n", "100", "--eps", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
    // a sparse host cannot have a spanning monochromatic component
    let out = hrl(
        &dir,
        &["experiment", "--kind", "mc-random", "--k", "3", "--n", "12", "--r", "3", "--p", "0.05", "--alpha", "0", "--trials", "2"],
    );
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn passing_commands_exit_0() {
    let dir = scratch("pass");
    assert_eq!(hrl(&dir, &["gen", "complete", "--k", "3", "--n", "5", "--out", "k5.hg"]).status.code(), Some(0));
    let out = hrl(&dir, &["mc-exact", "--graph", "k5.hg", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["value"], 5);
    assert_eq!(hrl(&dir, &["bounds", "eval", "--theorem", "1.1b", "--k", "3", "--n", "12"]).status.code(), Some(0));
    std::fs::write(dir.join("cfg.json"), r#"{"graph": "k5.hg", "r": 2}"#).unwrap();
    let out = hrl(&dir, &["--config", "cfg.json", "mc-exact"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["value"], 5);
    let _ = std::fs::remove_dir_all(&dir);
}
