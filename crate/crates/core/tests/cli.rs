//! End-to-end runs of the `rectdesign` binary.

use std::path::Path;
use std::process::{Command, Output};

fn rd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rectdesign")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct_to(dir: &Path, recipe: &[&str]) -> std::path::PathBuf {
    let path = dir.join("design.txt");
    let mut args = vec!["construct"];
    args.extend_from_slice(recipe);
    args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = rd(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn construct_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for recipe in [&["thm6", "t=2"][..], &["cor10", "q=4", "transpose=1"], &["ex4"], &["thm10", "ds=field:4"]] {
        let path = construct_to(dir.path(), recipe);
        let o = rd(&["verify", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{recipe:?}");
        assert!(stdout(&o).starts_with("status\tOK\n"));
    }
}

#[test]
fn construct_without_out_writes_design_to_stdout() {
    let o = rd(&["construct", "thm6", "t=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("RD 15 15 5 5 0 1 2 5 3\n15 15\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nature\tSR RD"));
}

#[test]
fn flipped_bit_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["thm6", "t=1"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // lines[0] is the parameter header, lines[1] the dimensions
    let row = &mut lines[2];
    let flipped = if row.starts_with('1') { "0" } else { "1" };
    row.replace_range(0..1, flipped);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let o = rd(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("status\tFAIL\n"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("deviation\t") && l.contains("treatment 1 ")), "{out}");
}

#[test]
fn header_dimension_mismatch_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["thm6", "t=1"]);
    let text = std::fs::read_to_string(&path).unwrap().replacen("\n15 15\n", "\n15 14\n", 1);
    std::fs::write(&path, text).unwrap();
    assert_eq!(rd(&["verify", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unsupported_inputs_exit_three() {
    assert_eq!(rd(&["construct", "cor8", "q=6"]).status.code(), Some(3));
    assert_eq!(rd(&["construct", "thm8", "q=5", "variant=iv"]).status.code(), Some(2));
    assert_eq!(rd(&["construct", "nosuch"]).status.code(), Some(2));
}

#[test]
fn classify_params() {
    let o = rd(&["classify", "--params", "12", "12", "3", "3", "0", "0", "1", "3", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("theta\t1 0 4\n"));
    // θ2 = 5 − 2 + 6·(0 − 3) < 0
    let o = rd(&["classify", "--params", "14", "14", "5", "5", "0", "2", "3", "2", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("nonexistent"));
}

#[test]
fn search_output() {
    let o = rd(&["search", "--v", "18", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("18 3 6 5 2 0 1 ") && l.contains("R-RD")), "{out}");
    let o = rd(&["search", "--v", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no factorization"));
}

#[test]
fn analyze_reports_semi_regular_structure() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), &["cor8", "q=4"]);
    let o = rd(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("semi_regular_structure\tpass\n"), "{out}");
    // 440/647
    assert!(out.contains("efficiency\t0.6801\n"), "{out}");
}

#[test]
fn table_runs_are_deterministic() {
    let a = rd(&["tables", "t5"]);
    let b = rd(&["tables", "t5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("summary\t14 pass, 0 fail, 0 skip\n"));
    assert_eq!(rd(&["tables", "s6"]).status.code(), Some(0));
}
