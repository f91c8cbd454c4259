use std::path::Path;
use std::process::{Command, Output};

use ncas::cli::SchemeFile;
use serde_json::Value;

fn ncas(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ncas"));
    c.args(args).env_remove("NCAS_OUTPUT_DIR");
    if let Some(d) = out_dir {
        c.env("NCAS_OUTPUT_DIR", d);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

#[test]
fn build_bgw_summary() {
    let o = ncas(&["build", "bgw-scheme", "--q", "7", "--m", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class=5, vertices=24, noncommutative"));
}

#[test]
fn build_json_is_machine_readable() {
    let o = ncas(&["--json", "build", "gh-scheme", "--q", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"], 36);
    assert_eq!(v["classification"], "noncommutative");
}

#[test]
fn gh_table_csv_first_row() {
    let o = ncas(&["table", "--gh", "--q", "3", "--format", "csv"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first_t = text.lines().find(|l| l.starts_with("T,")).unwrap();
    assert_eq!(first_t, "T,E0,1,1,1,9,9,9,6");
}

#[test]
fn round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let o = ncas(&["build", "bgw-scheme", "--q", "5", "--m", "2", "--out", "s.json"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("s.json");
    let p = path.to_str().unwrap();
    assert_eq!(ncas(&["verify", "--in", p], None).status.code(), Some(0));
    let o = ncas(&["verify", "--in", p, "--oracle"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matches exact"));

    // move the symmetric pair of cells (0,1),(1,0) from (1,0) to (1,1)
    let f = SchemeFile::read(&path).unwrap();
    let mut mats = f.matrices().unwrap();
    for (x, y) in [(0, 1), (1, 0)] {
        assert!(mats[1].get(x, y));
        mats[1].flip(x, y);
        mats[3].flip(x, y);
    }
    let bad = dir.path().join("corrupted.json");
    SchemeFile::from_matrices(&mats, f.labels.clone(), None).write(&bad).unwrap();
    let o = ncas(&["verify", "--in", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr_json(&o);
    assert_eq!(e["error"], "NotClosedUnderProduct");
    assert!(e["message"].as_str().unwrap().contains("axiom (iv)"));
}

#[test]
fn precondition_and_usage_exit_codes() {
    let o = ncas(&["build", "bgw-scheme", "--q", "5", "--m", "4"], None);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "SymmetryObstruction");
    assert_eq!(ncas(&["designs", "latin", "--v", "5"], None).status.code(), Some(3));
    assert_eq!(ncas(&[], None).status.code(), Some(1));
    assert_eq!(ncas(&["table", "--q", "3"], None).status.code(), Some(1));
    assert_eq!(ncas(&["build", "gh-scheme", "--q", "4"], None).status.code(), Some(3));
}

#[test]
fn fusion_commands() {
    let o = ncas(&["--json", "fusion", "--q", "5", "--m", "2", "--check-bm"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["certificate"].is_object());
    assert_eq!(v["stated_columns_unmatched"].as_array().unwrap().len(), 0);
    let o = ncas(&["fusion", "--q", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("symmetric"));
}

#[test]
fn designs_commands() {
    let o = ncas(&["designs", "bgw", "--q", "4", "--m", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SGDD(15, 7, 5, 3, 3, 3): ok"));
    assert_eq!(ncas(&["designs", "gh", "--q", "9"], None).status.code(), Some(0));
    let o = ncas(&["designs", "latin", "--v", "4"], None);
    assert_eq!(stdout(&o).lines().next(), Some("x 2 1 0"));
}
