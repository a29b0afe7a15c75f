//! End-to-end behavior of the binary: exit codes, JSON determinism, parse
//! error positions and the field-space disk cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_germlab"))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("run germlab")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .expect("run germlab")
}

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    root.to_string_lossy().into_owned()
}

#[test]
fn gfields_so3_total_dim() {
    let out = run(&["gfields", "--group", "so:3", "--jet-order", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total_dim"], 3);
    assert_eq!(v["per_degree"][0]["d"], 1);
    assert_eq!(v["per_degree"][0]["dim"], 3);
}

#[test]
fn moduli_cusp_under_rotations_is_zero() {
    let out = run(&[
        "moduli",
        "--germ",
        &fixture("cusp"),
        "--pair",
        "ag-vs-rxg",
        "--group",
        "so:2",
        "--jet-order",
        "5",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 0);
    assert_eq!(v["exact_sequence_ok"], true);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "tangent",
        "--germ",
        &fixture("cusp"),
        "--group",
        "gl:2",
        "--eq",
        "ag",
        "--jet-order",
        "5",
        "--extended",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn user_errors_exit_one() {
    // unparsable group
    let out = run(&["gfields", "--group", "nope:3", "--jet-order", "4"]);
    assert_eq!(out.status.code(), Some(1));
    // missing germ file
    let out = run(&[
        "tangent",
        "--germ",
        "/nonexistent/g.json",
        "--group",
        "so:2",
        "--jet-order",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"n":1,"p":2,"order":4,"components":["x1^2","x1 + x9"]}"#,
    )
    .unwrap();
    let out = run(&[
        "tangent",
        "--germ",
        path.to_str().unwrap(),
        "--group",
        "so:2",
        "--jet-order",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("col"), "{err}");
}

#[test]
fn truncation_warning_without_exact_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    std::fs::write(
        &path,
        r#"{"n":1,"p":2,"order":4,"components":["x1^2","x1^3"]}"#,
    )
    .unwrap();
    let out = run(&[
        "tangent",
        "--germ",
        path.to_str().unwrap(),
        "--group",
        "so:2",
        "--jet-order",
        "4",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("truncation artifacts"), "{err}");
    // the flag suppresses it
    let out2 = run(&[
        "tangent",
        "--germ",
        path.to_str().unwrap(),
        "--group",
        "so:2",
        "--jet-order",
        "4",
        "--exact-germ",
    ]);
    assert!(out2.status.success());
    assert!(!String::from_utf8_lossy(&out2.stderr).contains("truncation"));
}

#[test]
fn growth_probe_cli() {
    let out = run(&[
        "growth",
        "--germ",
        &fixture("cusp"),
        "--group",
        "so:2",
        "--eq",
        "ag",
        "--k-max",
        "6",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["strictly_increasing"], true);
    let codims: Vec<u64> = v["codims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["codim"].as_u64().unwrap())
        .collect();
    assert_eq!(codims, vec![1, 2, 3, 4, 5]);
}

#[test]
fn congruent_cli_no_match() {
    let dir = tempfile::tempdir().unwrap();
    let pa = dir.path().join("a.json");
    let pb = dir.path().join("b.json");
    std::fs::write(&pa, r#"{"n":1,"p":2,"order":8,"components":["x1","x1^2"]}"#).unwrap();
    std::fs::write(&pb, r#"{"n":1,"p":2,"order":8,"components":["x1","x1^3"]}"#).unwrap();
    let out = run(&[
        "congruent",
        "--germ-a",
        pa.to_str().unwrap(),
        "--germ-b",
        pb.to_str().unwrap(),
        "--mode",
        "euclidean",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["match"], false);
    assert_eq!(v["obstruction_degree"], 0);
}

#[test]
fn normal_form_cli_on_ak_fixture() {
    let out = run(&[
        "normal-form",
        "--germ",
        &fixture("a2_swapped"),
        "--kind",
        "ak",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["rotated"], true);
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn monge_cli_reports_both_conventions() {
    let out = run(&[
        "normal-form",
        "--germ",
        &fixture("monge_saddle"),
        "--kind",
        "monge",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lambda1"].as_f64().unwrap(), 1.0);
    assert_eq!(v["lambda2"].as_f64().unwrap(), -1.0);
    assert_eq!(v["graph_principal_curvatures"][0].as_f64().unwrap(), 2.0);
}

#[test]
fn disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["gfields", "--group", "sl:2", "--jet-order", "5", "--format", "json"];
    let a = run_with_env(&args, "GERMLAB_CACHE_DIR", cache);
    assert!(a.status.success());
    // slice files were written
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!entries.is_empty());
    // second run loads them and agrees byte for byte
    let b = run_with_env(&args, "GERMLAB_CACHE_DIR", cache);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reproduce_json_lists_all_criteria() {
    let out = run(&["reproduce", "--suite", "geometry", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["criteria"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["pass"] == true));
}
