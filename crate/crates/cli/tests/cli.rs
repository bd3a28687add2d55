//! End-to-end tests of the `concyclic` binary: the examples of the
//! specification, exit codes and the cache.

use std::path::Path;
use std::process::Command;

fn run_in(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_concyclic"))
        .args(args)
        .current_dir(dir)
        .env_remove("CONCYCLIC_CACHE")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

#[test]
fn uc_examples() {
    let (code, out, _) = run(&["uc", "--d", "1", "--n", "4", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.contains("uc = 1/2 (certified)"), "{out}");

    let (code, out, _) = run(&["uc", "--d", "3", "--n", "3..6", "--format", "json", "--no-cache"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let got: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["min_radius2"].as_str().unwrap()).collect();
    assert_eq!(got, ["1/3", "7/4", "8281/121", "1"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["certified"] == true));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["uc", "--d", "5", "--n", "4"][..],
        &["uc", "--d", "1", "--n", "2"],
        &["uc", "--d", "1"],
        &["count", "--d", "1", "--center", "1/2", "--r2", "1"],
        &["count", "--d", "1", "--center", "0,0", "--r2", "1/0"],
        &["count", "--d", "1", "--center", "0,0", "--r2", "0"],
        &["uc", "--d", "1", "--n", "4", "--mode", "certified", "--ell", "5"],
        &["uc", "--d", "1", "--n", "4", "--bound", "8", "--bound-cap", "4"],
        &["thm2", "--variant", "gauss", "--k", "99"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 1, "{args:?}: {err}");
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn table_csv_and_check() {
    let (code, out, _) = run(&["table", "--d", "7", "--format", "csv", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.contains("4/7,8/7,16/7,4,64/7,8,256/7,16"), "{out}");

    let (code, _, err) = run(&["table", "--d", "2,7,11", "--check", "--no-cache"]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("check: 24 cells matched"), "{err}");

    // A tiny heuristic region cannot reach every cell.
    let (code, _, err) = run(&["table", "--d", "1", "--mode", "heuristic", "--ell", "2", "--check", "--no-cache"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("mismatch d=1"), "{err}");
}

#[test]
fn bound_exhausted_exits_2() {
    let (code, out, _) = run(&["uc", "--d", "1", "--n", "7", "--bound-cap", "16", "--no-cache"]);
    assert_eq!(code, 2);
    assert!(out.contains("bound exhausted"), "{out}");
    assert!(out.contains("best upper bound"), "{out}");
}

#[test]
fn thm2_examples() {
    let (code, out, _) = run(&["thm2", "--variant", "gauss", "--k", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("D = 5/2"), "{out}");
    assert!(out.contains("count = 8"), "{out}");

    let (code, out, _) = run(&["thm2", "--variant", "eisenstein", "--k", "0", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["radius2"], "1");
    assert_eq!(v["count"], 6);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);

    let (code, out, _) = run(&["thm2", "--variant", "gauss", "--k", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["radius2"], "32045/2"); // (1/2) 5 13 17 29
    assert_eq!(v["count"], 64);
}

#[test]
fn count_examples() {
    for (args, want) in [
        (["--d", "1", "--center", "1/2,1/2", "--r2", "5/2"], "count = 8"),
        (["--d", "1", "--center", "0,0", "--r2", "3"], "count = 0"),
        (["--d", "3", "--center", "0,0", "--r2", "1"], "count = 6"),
        (["--d", "1", "--center", "-1/2,1/2", "--r2", "1/2"], "count = 4"),
    ] {
        let mut full = vec!["count"];
        full.extend(args);
        let (code, out, _) = run(&full);
        assert_eq!(code, 0);
        assert!(out.starts_with(want), "{args:?}: {out}");
    }
}

#[test]
fn sequence_examples() {
    let (code, out, _) = run(&["sequence", "--family", "gauss-4n", "--k", "2", "--format", "csv", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.contains("\n1,4,1/2,true,1/2,true\n"), "{out}");
    assert!(out.contains("\n2,8,5/2,true,5/2,true\n"), "{out}");

    let (code, out, _) = run(&["sequence", "--family", "eisenstein-6n", "--k", "1", "--format", "csv", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.contains("\n1,6,1,true,1,true\n"), "{out}");
}

#[test]
fn cache_serves_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["uc", "--d", "2,11", "--n", "3..6", "--format", "json", "--cache", "c.jsonl"];
    let (code, fresh, err) = run_in(dir.path(), &args);
    assert_eq!(code, 0);
    assert!(err.contains("searching"), "{err}");
    let lines = std::fs::read_to_string(dir.path().join("c.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 8);

    let (code, cached, err) = run_in(dir.path(), &args);
    assert_eq!(code, 0);
    assert!(!err.contains("searching"), "{err}");
    assert!(err.contains("served from cache"), "{err}");
    assert_eq!(cached, fresh);

    // A default cache file is used when none is named.
    let (code, _, _) = run_in(dir.path(), &["uc", "--d", "7", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(dir.path().join("concyclic-cache.jsonl").exists());
}

#[test]
fn corrupted_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run_in(dir.path(), &["uc", "--d", "1", "--n", "4", "--cache", "c.jsonl"]);
    assert_eq!(code, 0);
    let path = dir.path().join("c.jsonl");
    let text = std::fs::read_to_string(&path).unwrap();
    // uc(Z^2, 4) = 1/2; claim 1/3 instead.
    std::fs::write(&path, text.replace("\"min_radius2_den\":2", "\"min_radius2_den\":3")).unwrap();
    let (code, _, err) = run_in(dir.path(), &["uc", "--d", "1", "--n", "4", "--cache", "c.jsonl"]);
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("integrity"), "{err}");

    std::fs::write(&path, "garbage\n").unwrap();
    let (code, _, _) = run_in(dir.path(), &["uc", "--d", "1", "--n", "4", "--cache", "c.jsonl"]);
    assert_eq!(code, 4);
}

#[test]
fn default_modes_per_lattice() {
    let (code, out, _) = run(&["uc", "--d", "163", "--n", "3", "--format", "csv", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.contains("163,3,ok,1681/163,false,heuristic,50"), "{out}");
    let (code, out, _) = run(&["uc", "--d", "67", "--n", "3", "--force-certified", "--format", "csv", "--no-cache"]);
    assert_eq!(code, 0);
    assert!(out.contains("67,3,ok,289/67,true,certified,"), "{out}");
}
