//! End-to-end runs of the `twoweight` binary: exit codes, report formats,
//! file round trips and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_twoweight")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

#[test]
fn verify_bundled_example() {
    let out = run(&["verify", fixture("gf4xgf2.code").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["proper"], true);
    assert_eq!(json["regular"], true);
    assert_eq!(json["projective"], true);
    assert_eq!(json["srg"]["n"], 16);
    assert_eq!(json["srg"]["k"], 9);
    assert_eq!(json["srg"]["lambda"], 4);
    assert_eq!(json["srg"]["mu"], 6);
    // the printed enumerator is 0^1 8^9 12^6
    assert_eq!(json["enumerator"][1][0], "8");
    assert_eq!(json["enumerator"][1][1], 9);
}

#[test]
fn verify_with_units_gamma_override() {
    let out = run(&["verify", fixture("z4_hjelmslev.code").to_str().unwrap(), "--gamma", "units"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["gamma"], "2");
    assert_eq!(json["srg"]["k"], 6);
}

#[test]
fn screen_eliminated_rows_deep() {
    let out = run(&["screen", fixture("eliminated162.csv").to_str().unwrap(), "--deep", "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let eliminated = text.lines().filter(|l| l.ends_with(",eliminated")).count();
    assert_eq!(eliminated, 3, "{text}");
}

#[test]
fn screen_shallow_table_is_deterministic_and_parallel_safe() {
    let a = run(&["screen", fixture("paper_table82.csv").to_str().unwrap()]);
    let b = run(&["screen", fixture("paper_table82.csv").to_str().unwrap(), "--workers", "4"]);
    assert!(a.status.success() && b.status.success());
    // byte-identical up to the metadata line recording the worker count
    let strip = |bytes: &[u8]| -> String {
        String::from_utf8(bytes.to_vec())
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"workers\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}

#[test]
fn search_inline_row_with_ring_and_shape() {
    let dir = std::env::temp_dir().join("twoweight_search_test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&[
        "search",
        "16,9,4,6",
        "--ring",
        "GF(4)xGF(2)",
        "--shape",
        "1;1,1",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 code(s)"), "{text}");
    // the emitted .code file re-verifies to the same certificate
    let written = std::fs::read_dir(&dir).unwrap().next().unwrap().unwrap().path();
    let out = run(&["verify", written.to_str().unwrap(), "--gamma", "units"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["srg"]["k"], 9);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn hjelmslev_and_gray_check_commands() {
    let out = run(&["hjelmslev", "Z4", "1"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["distinct_codes"], 4);
    assert_eq!(json["srg"]["n"], 16);

    let out = run(&["gray-check", "Z4", "1"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["distinct_codes"], 4);
    assert_eq!(json["linear_images"], 0);
}

#[test]
fn invalid_input_exits_2() {
    let out = run(&["verify", "/nonexistent/path.code"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("twoweight_bad_input");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.code");
    std::fs::write(&bad, "ring Z16\nshape 1\ngamma 1\n1\n").unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn undecided_rows_exit_3() {
    // a tiny node cap turns the Z4 search into an undecided row
    let dir = std::env::temp_dir().join("twoweight_undecided");
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("row.csv");
    std::fs::write(&table, "N,k,lambda,mu\n16,6,2,2\n").unwrap();
    let out = run(&["screen", table.to_str().unwrap(), "--deep", "--node-cap", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn found_codes_round_trip_through_the_report_dir() {
    let dir = std::env::temp_dir().join("twoweight_found");
    let _ = std::fs::remove_dir_all(&dir);
    let table = std::env::temp_dir().join("twoweight_found_row.csv");
    std::fs::write(&table, "N,k,lambda,mu\n16,9,4,6\n").unwrap();
    let out = run(&["screen", table.to_str().unwrap(), "--deep", "--out", dir.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(",found"), "{text}");
    let mut verified = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let out = run(&["verify", path.to_str().unwrap(), "--gamma", "units"]);
        assert!(out.status.success());
        verified += 1;
    }
    assert!(verified >= 1);
    let _ = std::fs::remove_dir_all(&dir);
    let _ = std::fs::remove_file(&table);
}
