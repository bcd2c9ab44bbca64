use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-tqft"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn surface_file_then_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.tri");
    let path = path.to_str().unwrap();
    let made = run(&["surface", "--genus", "2", "--out", path]);
    assert_eq!(made.status.code(), Some(0));
    let inv = run(&["invariant", "--algebra", "matrix:2", "--surface", path]);
    assert_eq!(inv.status.code(), Some(0));
    assert_eq!(stdout(&inv).trim(), "1/4");

    let anti = run(&["invariant", "--algebra", "matrix:3:anti", "--surface", path]);
    assert_eq!(anti.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&anti.stderr).contains("error"));
}

#[test]
fn verify_quaternion_on_projective_plane() {
    let o = run(&["verify", "--group", "Q8", "--crosscaps", "1", "--direct"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.contains("PASS"));
    assert_eq!(row.split_whitespace().filter(|c| *c == "2").count(), 3, "{row}");

    let o = run(&["--json", "verify", "--group", "Q8", "--crosscaps", "1", "--direct"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["lhs"], "2/1");
    assert_eq!(v[0]["rhs"], "2/1");
    assert_eq!(v[0]["direct"], "2/1");
    assert_eq!(v[0]["status"], "Pass");
}

#[test]
fn walked_surface_keeps_its_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walk.tri");
    let path = path.to_str().unwrap();
    let made = run(&["surface", "--surface", "klein", "--walk", "12", "--seed", "3", "--out", path]);
    assert_eq!(made.status.code(), Some(0));
    let inv = run(&["invariant", "--algebra", "sum(swap,matrix:2:anti)", "--surface", path]);
    assert_eq!(stdout(&inv).trim(), "1");
    let structured = run(&["invariant", "--structured", "--algebra", "sum(swap,matrix:2:anti)", "--surface", path]);
    assert_eq!(stdout(&structured).trim(), "1");
}

#[test]
fn chartable_json() {
    let o = run(&["--json", "chartable", "--group", "D4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["classes"], 5);
    assert_eq!(v["irreps"][0]["dimension"], 2);
    assert_eq!(v["irreps"][0]["indicator"], 1);
}

#[test]
fn bad_inputs_exit_2() {
    assert_eq!(run(&["invariant", "--algebra", "matrix:2", "--surface", "/nonexistent.tri"]).status.code(), Some(2));
    assert_eq!(run(&["chartable", "--group", "Z9"]).status.code(), Some(2));
    assert_eq!(run(&["chartable", "--group", "S5", "--max-order", "100"]).status.code(), Some(2));
    assert_eq!(run(&["homcount", "--group", "S4", "--genus", "5", "--max-work", "1000"]).status.code(), Some(2));
    let o = run(&["verify", "--group", "S3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fuzz", "--unknown-flag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn failing_fuzz_exits_1_with_counterexample() {
    let o = run(&["fuzz", "--algebra", "matrix:2:none", "--surface", "rp2", "--walks", "1", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("FAIL"));
    assert!(text.contains("tri-v1"));
}

#[test]
fn group_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v4.grp");
    std::fs::write(&path, "grp-v1 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n").unwrap();
    let spec = format!("table:{}", path.to_str().unwrap());
    let o = run(&["homcount", "--group", &spec, "--crosscaps", "1"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = run(&["verify", "--group", &spec, "--surface", "torus"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "fuzz", "--algebra", "group:S3", "--crosscaps", "1", "--walks", "3", "--steps", "10", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let grid = ["verify", "--grid", "--group", "C3", "--group", "S3", "--surface", "torus", "--surface", "rp2", "--threads", "2"];
    assert_eq!(run(&grid).stdout, run(&grid).stdout);
}
