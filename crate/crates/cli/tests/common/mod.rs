//! Shared golden-file harness for the CLI integration and acceptance tests.
//!
//! Each case runs the binary from `tests/data` and compares its standard
//! output byte for byte with `tests/golden/<name>.out`. Setting
//! `UPDATE_GOLDEN=1` rewrites the golden files instead.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Required substring of standard error.
    pub stderr: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case {
        name,
        args,
        exit,
        stderr: None,
    }
}

const fn failing(name: &'static str, args: &'static [&'static str], exit: i32, stderr: &'static str) -> Case {
    Case {
        name,
        args,
        exit,
        stderr: Some(stderr),
    }
}

pub const CASES: &[Case] = &[
    case("bootstrap_flat", &["bootstrap", "flat5.csv"], 0),
    case("bootstrap_bump", &["bootstrap", "bump1y.csv"], 0),
    case("bootstrap_strict_flat", &["--strict", "bootstrap", "flat5.csv"], 0),
    case("bootstrap_json", &["bootstrap", "convex_swap.json"], 0),
    failing("bootstrap_malformed_row", &["bootstrap", "bad_row.csv"], 2, "line 3"),
    failing(
        "bootstrap_malformed_json",
        &["bootstrap", "malformed.json"],
        2,
        "line 1",
    ),
    failing(
        "bootstrap_missing_file",
        &["bootstrap", "no_such_file.csv"],
        2,
        "no_such_file.csv",
    ),
    failing(
        "bootstrap_off_grid",
        &["bootstrap", "off_grid_swap.csv"],
        2,
        "annual grid",
    ),
    failing(
        "bootstrap_wrong_type",
        &["bootstrap", "affine_zero.json"],
        1,
        "needs a swap curve",
    ),
    case("par_concave", &["par", "concave_zero.csv"], 0),
    case("par_flat_zero", &["par", "flat5.csv", "--curve-type", "zero"], 0),
    case("forwards_concave", &["forwards", "concave_zero.csv"], 0),
    failing(
        "forwards_strict_invalid",
        &["forwards", "bad_discount.json", "--strict"],
        1,
        "fails validation",
    ),
    case("validate_ok", &["validate", "concave_zero.csv"], 0),
    case("validate_swap", &["validate", "flat5.csv", "--curve-type", "swap"], 0),
    case("validate_bad_discount", &["validate", "bad_discount.json"], 1),
    case("scan_concave", &["scan", "concave_zero.csv"], 0),
    case("scan_concave_all", &["scan", "concave_zero.csv", "--mode", "all"], 0),
    case("scan_kinked", &["scan", "kinked_zero.csv"], 0),
    case("scan_kinked_all", &["scan", "kinked_zero.csv", "--mode", "all"], 0),
    case(
        "scan_kinked_loose_tol",
        &["scan", "kinked_zero.csv", "--tol", "0.003"],
        0,
    ),
    case("scan_swap", &["scan", "convex_swap.json"], 0),
    case(
        "scan_swap_csv",
        &["scan", "rising_swap.csv", "--kind", "swap", "--mode", "all"],
        0,
    ),
    failing("scan_two_points", &["scan", "two_points.csv"], 1, "need ≥ 3 points"),
    failing(
        "scan_invalid_curve",
        &["scan", "invalid_zero.csv"],
        1,
        "fails validation",
    ),
    failing("scan_discount_input", &["scan", "bad_discount.json"], 1, "scan needs"),
    failing(
        "scan_negative_tol",
        &["scan", "concave_zero.csv", "--tol", "-1"],
        1,
        "tolerance",
    ),
    case(
        "butterfly_affine",
        &["butterfly", "affine_zero.json", "--legs", "1,2,3"],
        0,
    ),
    case(
        "butterfly_kink",
        &["butterfly", "kinked_zero.csv", "--legs", "4,5,6"],
        0,
    ),
    case(
        "butterfly_swap",
        &["butterfly", "convex_swap.json", "--legs", "1,2,3"],
        0,
    ),
    failing(
        "butterfly_bad_order",
        &["butterfly", "kinked_zero.csv", "--legs", "3,2,4"],
        1,
        "strictly increasing",
    ),
    case(
        "pnl_zero_origin",
        &["pnl", "affine_zero.json", "--legs", "1,2,3", "--shift-bp", "0:0:1"],
        0,
    ),
    case(
        "pnl_zero_grid",
        &[
            "pnl",
            "kinked_zero.csv",
            "--legs",
            "4,5,6",
            "--shift-bp",
            "-500:500:50",
            "--horizon",
            "2",
        ],
        0,
    ),
    case(
        "pnl_swap_flat",
        &[
            "pnl",
            "flat5.csv",
            "--kind",
            "swap",
            "--legs",
            "1,5,10",
            "--shift-bp",
            "-100:100:25",
        ],
        0,
    ),
    case(
        "pnl_swap_convex",
        &[
            "pnl",
            "convex_swap.json",
            "--legs",
            "1,2,3",
            "--shift-bp",
            "-100:100:10",
            "--horizon",
            "0.5",
        ],
        0,
    ),
    failing(
        "pnl_leg_off_grid",
        &["pnl", "flat5.csv", "--kind", "swap", "--legs", "1,2.5,3"],
        1,
        "not a tenor index",
    ),
    failing(
        "pnl_leg_beyond_curve",
        &["pnl", "concave_zero.csv", "--legs", "1,5,30"],
        1,
        "30",
    ),
    failing(
        "pnl_horizon_past_first_leg",
        &["pnl", "kinked_zero.csv", "--legs", "4,5,6", "--horizon", "5"],
        1,
        "horizon",
    ),
    failing(
        "pnl_bad_range",
        &["pnl", "flat5.csv", "--legs", "1,2,3", "--shift-bp", "5:1:1"],
        2,
        "LO <= HI",
    ),
    case("verify_flat", &["verify", "flat5.csv", "--shift-bp", "100"], 0),
    case("verify_flat_down", &["verify", "flat5.csv", "--shift-bp", "-100"], 0),
    case("verify_bump", &["verify", "flat5.csv", "--bump-bp", "1:10"], 1),
    case(
        "verify_bump_and_shift",
        &["verify", "flat5.csv", "--shift-bp", "10", "--bump-bp", "1:10"],
        1,
    ),
    case(
        "verify_trials",
        &[
            "verify",
            "rising_swap.csv",
            "--shift-bp",
            "25",
            "--trials",
            "200",
            "--seed",
            "42",
        ],
        0,
    ),
    failing(
        "verify_bump_out_of_range",
        &["verify", "flat5.csv", "--bump-bp", "11:10"],
        1,
        "outside",
    ),
    failing("verify_no_shift", &["verify", "flat5.csv"], 2, "required"),
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yieldshape"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs")
}

/// Runs one case and returns a description of every mismatch.
pub fn check_case(case: &Case) -> Vec<String> {
    let out = run(case.args);
    let mut problems = Vec::new();
    let code = out.status.code().unwrap_or(-1);
    if code != case.exit {
        problems.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
    }
    let stderr = String::from_utf8_lossy(&out.stderr);
    if let Some(needle) = case.stderr {
        if !stderr.contains(needle) {
            problems.push(format!("{}: stderr lacks `{needle}`: {stderr}", case.name));
        }
    }
    let path = golden_dir().join(format!("{}.out", case.name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).expect("golden file writable");
    } else {
        match std::fs::read(&path) {
            Ok(expected) if expected == out.stdout => {}
            Ok(_) => problems.push(format!("{}: output differs from {}", case.name, path.display())),
            Err(e) => problems.push(format!("{}: {}: {e}", case.name, path.display())),
        }
    }
    problems
}

/// Runs the same seeded command twice and through `--out`; all three
/// outputs must be byte-identical.
pub fn check_determinism() -> Vec<String> {
    let args = [
        "verify",
        "rising_swap.csv",
        "--shift-bp",
        "50",
        "--trials",
        "1000",
        "--seed",
        "42",
    ];
    let first = run(&args);
    let second = run(&args);
    let mut problems = Vec::new();
    if first.stdout.is_empty() {
        problems.push("seeded verify produced no output".to_string());
    }
    if first.stdout != second.stdout || first.status.code() != second.status.code() {
        problems.push("repeated seeded verify runs differ".to_string());
    }
    let dir = tempfile::tempdir().expect("temp dir");
    let target = dir.path().join("report.csv");
    let mut with_out: Vec<&str> = args.to_vec();
    let target_str = target.to_str().expect("utf-8 temp path");
    with_out.extend(["--out", target_str]);
    let third = run(&with_out);
    if !third.stdout.is_empty() {
        problems.push("--out still wrote to standard output".to_string());
    }
    match std::fs::read(&target) {
        Ok(bytes) if bytes == first.stdout => {}
        Ok(_) => problems.push("--out file differs from standard output".to_string()),
        Err(e) => problems.push(format!("--out file unreadable: {e}")),
    }
    let other_seed = run(&[
        "verify",
        "rising_swap.csv",
        "--shift-bp",
        "50",
        "--trials",
        "1000",
        "--seed",
        "43",
    ]);
    if other_seed.status.code() != Some(0) {
        problems.push("seed 43 verify run failed".to_string());
    }
    let scan = ["scan", "kinked_zero.csv", "--mode", "all"];
    if run(&scan).stdout != run(&scan).stdout {
        problems.push("repeated scans differ".to_string());
    }
    problems
}
