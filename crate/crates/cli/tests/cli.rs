mod common;

use common::{check_case, check_determinism, run, CASES};

#[test]
fn golden_outputs_and_exit_codes() {
    let problems: Vec<String> = CASES.iter().flat_map(check_case).collect();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let problems = check_determinism();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn every_command_has_a_golden_case() {
    for command in [
        "bootstrap",
        "par",
        "forwards",
        "validate",
        "scan",
        "butterfly",
        "pnl",
        "verify",
    ] {
        assert!(
            CASES.iter().any(|c| c.args.contains(&command) && c.exit == 0),
            "no successful golden case for {command}"
        );
    }
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn column(table: &str, name: &str) -> Vec<f64> {
    let mut lines = table.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let at = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(at).unwrap().parse().unwrap()).collect()
}

#[test]
fn flat_bootstrap_matches_closed_form() {
    let table = stdout(&["bootstrap", "flat5.csv"]);
    for (n, p) in column(&table, "p_n").iter().enumerate() {
        assert!((p - 1.05f64.powi(-(n as i32 + 1))).abs() <= 1e-12);
    }
}

#[test]
fn one_year_bump_raises_later_factors() {
    let flat = column(&stdout(&["bootstrap", "flat5.csv"]), "p_n");
    let bumped = column(&stdout(&["bootstrap", "bump1y.csv"]), "p_n");
    assert!(bumped[0] < flat[0]);
    assert!(bumped[1..].iter().zip(&flat[1..]).all(|(b, f)| b > f));
}

#[test]
fn kinked_scan_is_sorted_by_margin() {
    let margins = column(&stdout(&["scan", "kinked_zero.csv", "--mode", "all"]), "margin");
    assert!(margins.len() > 1);
    assert!(margins.windows(2).all(|w| w[0] >= w[1]));
    assert!(margins.iter().all(|m| *m > 0.0));
}

#[test]
fn swap_pnl_on_flat_curve_has_no_carry() {
    let table = stdout(&[
        "pnl",
        "flat5.csv",
        "--kind",
        "swap",
        "--legs",
        "2,4,9",
        "--shift-bp",
        "-50:50:5",
    ]);
    assert!(column(&table, "carry").iter().all(|c| *c == 0.0));
}

#[test]
fn convex_zero_grid_is_non_negative() {
    let table = stdout(&[
        "pnl",
        "kinked_zero.csv",
        "--legs",
        "4,5,6",
        "--shift-bp",
        "-500:500:1",
        "--horizon",
        "1",
    ]);
    let values = column(&table, "value");
    assert_eq!(values.len(), 1001);
    assert!(values.iter().all(|v| *v >= 0.0));
}

#[test]
fn bump_reports_ratio_violation_at_one() {
    let out = run(&["verify", "flat5.csv", "--shift-bp", "10", "--bump-bp", "1:10"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("file,discount_ratio,")).unwrap();
    assert_eq!(row.split(',').nth(2), Some("fail"));
    assert_eq!(row.split(',').nth(6), Some("1"));
}

#[test]
fn json_and_delimited_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("flat.json");
    let points: Vec<String> = (1..=10).map(|t| format!("{{\"t\":{t},\"r\":0.05}}")).collect();
    std::fs::write(
        &json,
        format!("{{\"curve_type\":\"swap\",\"points\":[{}]}}", points.join(",")),
    )
    .unwrap();
    assert_eq!(
        stdout(&["bootstrap", json.to_str().unwrap()]),
        stdout(&["bootstrap", "flat5.csv"])
    );
}
