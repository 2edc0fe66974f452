//! Terminal sessions, in process and through the `atreya` binary.

mod common;

use std::io::Write;
use std::process::{Command, Stdio};

use atreya_gateway::repl::repl_loop;

use common::{check_golden, fixture_dir, replay_config, runtime_with};

fn session(input: &str) -> (String, tempfile::TempDir, i32) {
    let rt = runtime_with(&replay_config());
    let dir = tempfile::tempdir().unwrap();
    let mut out = Vec::new();
    let outcome = repl_loop(&rt.engine, input.as_bytes(), &mut out, dir.path()).unwrap();
    let text = String::from_utf8(out)
        .unwrap()
        .replace(&dir.path().display().to_string(), "<downloads>");
    (text, dir, outcome.exit_code)
}

#[test]
fn menu_number_presses_exit() {
    let (out, _dir, code) = session("/start\n5\n");
    assert_eq!(code, 0);
    assert!(out.contains("  [5] Exit\n"));
    assert!(out.contains("(Exit)\nGoodbye!"));
}

#[test]
fn molecule_search_saves_png() {
    let (out, dir, code) = session("/start\n1\nmsy/paracetamole\n");
    assert_eq!(code, 0);
    let png = std::fs::read(dir.path().join("image-001.png")).unwrap();
    assert!(png.starts_with(b"\x89PNG"));
    assert!(out.contains("[image saved to <downloads>/image-001.png]\nChEMBL ID: CHEMBL112"));
    check_golden("repl-molecule-card.txt", &out);
}

#[test]
fn replay_miss_reports_and_continues() {
    let (out, _dir, code) = session("/start\nmsy/never-recorded-name\ntgg/BRD4\nexit\n");
    assert_eq!(code, 0);
    assert!(out.contains("[ReplayMiss]"), "{out}");
    assert!(out.contains("Found 2 targets"), "{out}");
    assert!(out.trim_end().ends_with("Send /start in a new chat to begin again."));
}

#[test]
fn top50_writes_csv() {
    let (out, dir, _) = session("/start\ntop50\nexit\n");
    let csv = std::fs::read_to_string(dir.path().join("approved_drugs.csv")).unwrap();
    assert_eq!(csv.lines().count(), 51);
    assert!(out.contains("approved_drugs.csv (text/csv,"));
}

#[test]
fn binary_runs_a_replay_session() {
    let dir = tempfile::tempdir().unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_atreya"))
        .args(["repl", "--replay"])
        .arg(fixture_dir())
        .arg("--downloads")
        .arg(dir.path())
        .env_remove("ATREYA_MODE")
        .env_remove("ATREYA_TOKEN")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"/start\n1\nmsy/paracetamole\n5\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let out = String::from_utf8(output.stdout).unwrap();
    assert!(out.contains("PARACETAMOL"));
    assert!(out.contains("Goodbye!"));
    assert!(dir.path().join("image-001.png").exists());
}

#[test]
fn binary_rejects_unknown_env_keys() {
    let output = Command::new(env!("CARGO_BIN_EXE_atreya"))
        .args(["repl", "--replay"])
        .arg(fixture_dir())
        .env("ATREYA_NOT_A_SETTING", "1")
        .env("ATREYA_LOG", "debug")
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("ATREYA_NOT_A_SETTING"));
}

#[test]
fn binary_accepts_log_filter_from_env() {
    let output = Command::new(env!("CARGO_BIN_EXE_atreya"))
        .args(["repl", "--replay"])
        .arg(fixture_dir())
        .env("ATREYA_LOG", "warn")
        .env_remove("ATREYA_TOKEN")
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
}
