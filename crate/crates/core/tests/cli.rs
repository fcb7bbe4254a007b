//! Command-line behavior through `run_with`.

use std::fs;
use std::path::Path;

use serde_json::Value;
use steiner_core::cli::{run_with, EXIT_NO, EXIT_USAGE, EXIT_YES};

/// A directed path 1 -> 2 -> 3 plus an undirected edge {3,4}.
const YES_INSTANCE: &str = "p so 4 1 2 2\ne 3 4\na 1 2\na 2 3\nt 1 4\nt 1 3\n";
/// Pairs (1,2) and (2,1) over a single edge.
const NO_INSTANCE: &str = "p so 2 1 0 2\ne 1 2\nt 1 2\nt 2 1\n";

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["steiner"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_yes_prints_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "yes.so", YES_INSTANCE);
    let (code, out, _) = run(&["solve", "--algo", "brute", &f]);
    assert_eq!(code, EXIT_YES);
    assert!(out.lines().next().unwrap().starts_with("c YES"));
    assert!(out.lines().any(|l| l == "o 3 4"));
}

#[test]
fn solve_no_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "no.so", NO_INSTANCE);
    let (code, out, _) = run(&["solve", "--algo", "arcs", &f]);
    assert_eq!(code, EXIT_NO);
    assert!(out.contains("NO"));
    assert!(!out.lines().any(|l| l.starts_with("o ")));
}

#[test]
fn oversized_cover_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "big.so",
        "p so 8 7 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 8\nt 1 8\n",
    );
    let (code, _, err) = run(&["solve", "--algo", "vc", "--cover", "1,2,3,4,5,6,7", &f]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn missing_file_and_bad_flags_are_usage_errors() {
    assert_eq!(run(&["solve", "/nonexistent/file.so"]).0, EXIT_USAGE);
    assert_eq!(run(&["solve", "--algo", "nope", "x"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn solve_json_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "yes.so", YES_INSTANCE);
    let (code, out, _) = run(&["solve", "--json", "--algo", "arcs", &f]);
    assert_eq!(code, EXIT_YES);
    let doc: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(doc["verdict"], "YES");
    assert_eq!(doc["algo"], "arcs");
    assert!(doc["witness"].is_array());
}

#[test]
fn preprocess_json_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "yes.so", YES_INSTANCE);
    let (code, out, _) = run(&["preprocess", "--json", &f]);
    assert_eq!(code, EXIT_YES);
    let doc: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(doc["input"]["n"], 4);
    assert_eq!(doc["verdict"], "YES");
}

#[test]
fn kernelize_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "yes.so", YES_INSTANCE);
    let target = dir.path().join("k.so");
    let (code, _, _) = run(&["kernelize", &f, "-o", target.to_str().unwrap()]);
    assert_eq!(code, EXIT_YES);
    let kernel = fs::read_to_string(&target).unwrap();
    assert!(steiner_core::parse_instance(&kernel).is_ok());
    let side: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("k.so.json")).unwrap()).unwrap();
    assert!(side.is_object());

    let (code, out, err) = run(&["kernelize", &f]);
    assert_eq!(code, EXIT_YES);
    assert_eq!(out, kernel);
    assert!(serde_json::from_str::<Value>(err.trim()).is_ok());
}

#[test]
fn generate_random_is_seeded() {
    let a = run(&["generate", "random", "--seed", "5", "--n", "7"]);
    let b = run(&["generate", "random", "--seed", "5", "--n", "7"]);
    assert_eq!(a.0, EXIT_YES);
    assert_eq!(a.1, b.1);
    let body: String =
        a.1.lines()
            .filter(|l| !l.starts_with('c'))
            .map(|l| format!("{l}\n"))
            .collect();
    assert!(steiner_core::parse_instance(&body).is_ok());
}

#[test]
fn seed_comes_from_environment() {
    std::env::set_var("SO_SEED", "42");
    let a = run(&["generate", "random", "--n", "6"]);
    let b = run(&["generate", "random", "--seed", "42", "--n", "6"]);
    assert_eq!(a, b);
}

#[test]
fn generate_sat_from_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "phi.cnf", "p cnf 2 1\n1 2 0\n");
    let (code, out, _) = run(&["generate", "sat", "--cnf", &f]);
    assert_eq!(code, EXIT_YES);
    assert!(out.lines().any(|l| l.starts_with("p so 6 2 ")));
}

#[test]
fn crossvalidate_zero_seeds_and_cap() {
    assert_eq!(run(&["crossvalidate", "--count", "0"]).0, EXIT_YES);
    let (code, _, _) = run(&["crossvalidate", "--max-edges", "30", "--brute-cap", "20"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, out, _) = run(&["crossvalidate", "--seed", "1", "--count", "20", "--json"]);
    assert_eq!(code, EXIT_YES);
    assert!(serde_json::from_str::<Value>(out.trim()).is_ok());
}

#[test]
fn bench_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["bench", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_YES);
    assert_eq!(
        out.lines().collect::<Vec<_>>(),
        ["file,algo,verdict,ms,leaves"]
    );

    write(dir.path(), "a.so", YES_INSTANCE);
    let (code, out, _) = run(&["bench", dir.path().to_str().unwrap(), "--algos", "arcs"]);
    assert_eq!(code, EXIT_YES);
    let rows: Vec<_> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let cols: Vec<_> = rows[0].split(',').collect();
    assert_eq!(cols[1], "arcs");
    assert_eq!(cols[2], "YES");
    let leaves: u64 = cols[4].parse().unwrap();
    assert!(leaves <= 1 << (6 * 2));
}

#[test]
fn emit_mso2_lists_facts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "yes.so", YES_INSTANCE);
    let (code, out, _) = run(&["emit-mso2", &f]);
    assert_eq!(code, EXIT_YES);
    assert!(!out.is_empty());
}
