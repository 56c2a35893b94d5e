//! End-to-end smoke tests for the command-line binary.

use std::process::Command;

fn rejsamp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rejsamp"))
}

#[test]
fn distance_between_tables() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.hex");
    let g = dir.path().join("g.hex");
    // Two 2-variable tables differing in one of four entries.
    std::fs::write(&f, "6\n").unwrap();
    std::fs::write(&g, "4\n").unwrap();
    let out = rejsamp()
        .args(["distance", "--op", "between", "--table"])
        .arg(&f)
        .arg("--table2")
        .arg(&g)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/4");
}

#[test]
fn chi_table_suite_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("chi.csv");
    let out = rejsamp()
        .args(["chi-table", "--set", "ns=8,12", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success(), "exit code 0 when every pair matches");
    let csv = std::fs::read_to_string(&report).unwrap();
    assert!(csv.contains("#suite=chi-table"));
    assert!(csv.contains("#summary passed=true"));
    assert!(csv.lines().any(|l| l.starts_with("8,g1,1/2,")));
}

#[test]
fn distinguish_and_unknown_flags() {
    let out = rejsamp()
        .args(["distinguish", "--n", "16", "--trials", "2", "--seed", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("trial,family,verdict,cost,odd_cycle_found"));

    let usage = rejsamp().args(["no-such-command"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2), "usage errors exit with 2");
}
