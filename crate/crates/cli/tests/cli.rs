use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thirdbvp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_csv(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn solve_yao_feng_7_takes_five_iterations() {
    let r = ok_json(&["solve", "--problem", "yao-feng-7", "--h", "0.01", "--tol", "1e-6"]);
    assert_eq!(r["iterations"], 5);
    assert_eq!(r["converged"], true);
    assert!(r["max_dev_exact"].is_null());
    for key in [
        "problem", "h", "tol", "iterations", "final_diff", "q", "p_k", "M0", "M1", "M2", "bound_checks",
        "residual", "max_dev_exact", "converged",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn solve_yao_feng_8_respects_its_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.csv");
    let r = ok_json(&["solve", "--problem", "yao-feng-8", "--csv", path.to_str().unwrap()]);
    assert_eq!(r["iterations"], 8);
    let (header, rows) = read_csv(&path);
    assert_eq!(header, "t,u,du,d2u,phi");
    assert_eq!(rows.len(), 101);
    let max_u = rows.iter().map(|r| r[1]).fold(f64::MIN, f64::max);
    assert!(max_u <= 0.3417, "{max_u}");
    assert!(rows.iter().all(|r| r[1] >= -1e-8));
}

#[test]
fn csv_and_report_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sol.csv");
    let report = dir.path().join("report.json");
    let out = run(&[
        "solve",
        "--problem",
        "dqa",
        "--csv",
        csv.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let (_, rows) = read_csv(&csv);
    let dev = rows
        .iter()
        .map(|r| (r[1] - (r[0].powi(3) - 3.0 * r[0].powi(2) + 3.0 * r[0])).abs())
        .fold(0.0, f64::max);
    assert!((dev - r["max_dev_exact"].as_f64().unwrap()).abs() < 1e-15);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"problem": "yao-feng-7", "h": 0.02, "tol": 1e-6}"#).unwrap();
    let r = ok_json(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r["h"], 0.02);
    let r = ok_json(&["solve", "--config", cfg.to_str().unwrap(), "--h", "0.01"]);
    assert_eq!(r["h"], 0.01);
    assert_eq!(r["iterations"], 5);
}

#[test]
fn unknown_problem_is_named_in_the_diagnostic() {
    let out = run(&["solve", "--problem", "nosuch"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("nosuch"));
}

#[test]
fn spacing_that_does_not_divide_one_is_rejected() {
    let out = run(&["solve", "--problem", "dqa", "--h", "0.03"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_iterations_exit_nonzero() {
    let out = run(&["solve", "--problem", "feng-liu-4.2", "--max-iter", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("feng-liu-4.2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["solve", "--h"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["kernel"]).status.code(), Some(2));
}

#[test]
fn check_bai_contracts() {
    let r = ok_json(&["check", "--problem", "bai-3.5", "--M", "0.835"]);
    assert_eq!(r["theorem4_holds"], true);
    assert!((r["q"].as_f64().unwrap() - 0.4851).abs() < 1e-3);
}

#[test]
fn check_yao_feng_7_predicts_increasing() {
    let r = ok_json(&["check", "--problem", "yao-feng-7", "--M", "1.1"]);
    assert_eq!(r["predicted_monotonicity"], "increasing");
    assert!((r["q"].as_f64().unwrap() - 0.0913).abs() < 1e-3);
    let r = ok_json(&["check", "--problem", "yao-feng-7", "--M", "0.01"]);
    assert_eq!(r["theorem1_holds"], false);
}

#[test]
fn kernel_case1_matches_constructed_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let out = run(&["kernel", "--case", "1", "--compare-general", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let err = stderr(&out);
    let gap: f64 = err.trim().strip_prefix("max_gap=").unwrap().parse().unwrap();
    assert!(gap <= 1e-12, "{gap}");
    let (header, rows) = read_csv(&path);
    assert_eq!(header, "t,s,G,G1,G2");
    assert_eq!(rows.len(), 101 * 101);
    // row-major in t, lower branch at s = t
    assert_eq!((rows[1][0], rows[1][1]), (0.0, 0.01));
    let diag = &rows[50 * 101 + 50];
    assert!((diag[4] - 0.5).abs() < 1e-15);
}

#[test]
fn kernel_case3_is_nonnegative() {
    let out = run(&["kernel", "--case", "3", "--n", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let g: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(g.len(), 51 * 51);
    assert!(g.iter().all(|&v| v >= 0.0));
}

#[test]
fn kernel_from_bc_file() {
    let dir = tempfile::tempdir().unwrap();
    let bc = dir.path().join("bc.json");
    std::fs::write(
        &bc,
        r#"{"a1":1,"b1":0,"g1":0,"a2":0,"b2":1,"g2":0,"a3":0,"b3":0,"g3":1}"#,
    )
    .unwrap();
    let general = run(&["kernel", "--bc-file", bc.to_str().unwrap(), "--n", "20"]);
    let catalog = run(&["kernel", "--case", "2", "--n", "20"]);
    assert!(general.status.success(), "{}", stderr(&general));
    let parse = |o: &Output| -> Vec<f64> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .skip(1)
            .flat_map(|l| l.split(',').map(|c| c.parse::<f64>().unwrap()).collect::<Vec<_>>())
            .collect()
    };
    let gap = parse(&general)
        .iter()
        .zip(parse(&catalog))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(gap <= 1e-12);
}

#[test]
fn duplicate_boundary_rows_are_rank_deficient() {
    let dir = tempfile::tempdir().unwrap();
    let bc = dir.path().join("bc.json");
    std::fs::write(
        &bc,
        r#"{"a1":1,"b1":0,"g1":0,"a2":1,"b2":0,"g2":0,"a3":0,"b3":1,"g3":0}"#,
    )
    .unwrap();
    let out = run(&["kernel", "--bc-file", bc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("rank"), "{}", stderr(&out));
}

#[test]
fn singular_boundary_system_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bc = dir.path().join("bc.json");
    std::fs::write(
        &bc,
        r#"{"a1":0,"b1":1,"g1":0,"a2":0,"b2":0,"g2":1,"a3":0,"b3":1,"g3":0}"#,
    )
    .unwrap();
    let out = run(&["kernel", "--bc-file", bc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).to_lowercase().contains("singular"), "{}", stderr(&out));
}

#[test]
fn convergence_dqa1_is_second_order() {
    let out = run(&["convergence", "--problem", "dqa1", "--h0", "0.04", "--levels", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h,max_dev_exact,observed_order"));
    let orders: Vec<f64> = lines
        .filter_map(|l| l.split(',').nth(2).filter(|c| !c.is_empty()).map(|c| c.parse().unwrap()))
        .collect();
    assert_eq!(orders.len(), 3);
    assert!(orders.iter().all(|p| (1.85..=2.15).contains(p)), "{orders:?}");
}

#[test]
fn convergence_without_exact_solution_fails() {
    let out = run(&["convergence", "--problem", "yao-feng-7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exact solution"));
}

#[test]
fn list_shows_six_problems() {
    let out = run(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("dqa1,case2,true"));
    assert!(text.contains("dqa,case3,true"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let csv = dir.path().join(format!("s{i}.csv"));
        let report = dir.path().join(format!("r{i}.json"));
        let out = run(&[
            "solve",
            "--problem",
            "feng-liu-4.2",
            "--csv",
            csv.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let check = run(&["check", "--problem", "feng-liu-4.2"]);
        outputs.push((std::fs::read(&csv).unwrap(), std::fs::read(&report).unwrap(), check.stdout));
    }
    assert_eq!(outputs[0], outputs[1]);
}
