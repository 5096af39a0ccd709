//! End-to-end smoke tests through the installed binary: output contract,
//! exit codes, and determinism across thread counts.

use std::path::Path;
use std::process::{Command, Output};

const HEADER: &str =
    "gamma0,omega_over_t,N,M,F_analytic,F_sim,F_anticlone,p_postselect,n_max,tail_mass,method,wall_ms";

fn horizon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horizon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Parse the named CSV column of the first data row as f64.
fn first_row_field(csv: &str, column: &str) -> Option<f64> {
    let mut lines = csv.lines();
    let idx = lines
        .next()
        .expect("header")
        .split(',')
        .position(|c| c == column)
        .expect("known column");
    let cell = lines.next().expect("data row").split(',').nth(idx)?;
    cell.parse().ok()
}

#[test]
fn analytic_point_hits_the_classical_plateau() {
    let out = horizon(&[
        "fidelity", "--gamma0", "1.0", "--omega-over-t", "2", "--n", "1", "--m", "5",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with(HEADER), "unexpected header in {text}");
    let f = first_row_field(&text, "F_analytic").expect("fidelity cell");
    assert!((f - 2.0 / 3.0).abs() < 1e-8, "F = {f}");
}

#[test]
fn analytic_point_matches_the_documented_value() {
    let out = horizon(&["fidelity", "--gamma0", "0.95", "--omega-over-t", "4", "--m", "1"]);
    assert!(out.status.success());
    let f = first_row_field(&stdout_of(&out), "F_analytic").expect("fidelity cell");
    assert!((f - 0.8354575716).abs() < 1e-6, "F = {f}");
}

#[test]
fn both_methods_agree_and_report_their_difference() {
    let out = horizon(&[
        "fidelity", "--gamma0", "0.95", "--omega-over-t", "4", "--m", "2", "--method", "both",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let a = first_row_field(&text, "F_analytic").expect("analytic cell");
    let s = first_row_field(&text, "F_sim").expect("simulated cell");
    assert!((a - s).abs() < 1e-9, "analytic {a} vs simulated {s}");
    assert!(
        text.lines().any(|l| l.starts_with("# |F_analytic - F_sim| =")),
        "missing difference note in {text}"
    );
}

#[test]
fn domain_and_usage_errors_exit_2() {
    let bad_gamma = horizon(&["fidelity", "--gamma0", "1.5", "--omega-over-t", "2", "--m", "1"]);
    assert_eq!(bad_gamma.status.code(), Some(2));
    let missing_flag = horizon(&["fidelity", "--gamma0", "0.5"]);
    assert_eq!(missing_flag.status.code(), Some(2));
    let early_gamma = horizon(&[
        "fidelity", "--scenario", "early", "--gamma0", "0.5", "--omega-over-t", "2", "--m", "2",
    ]);
    assert_eq!(early_gamma.status.code(), Some(2));
}

#[test]
fn unreachable_truncation_exits_3() {
    let out = horizon(&[
        "fidelity", "--gamma0", "0.95", "--omega-over-t", "1", "--m", "6", "--method",
        "simulate", "--nmax", "12",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("ceiling"), "stderr: {err}");
}

#[test]
fn early_scenario_reproduces_the_optimal_value() {
    let out = horizon(&[
        "fidelity", "--scenario", "early", "--omega-over-t", "2", "--n", "2", "--m", "4",
        "--method", "both",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let a = first_row_field(&text, "F_analytic").expect("analytic cell");
    let s = first_row_field(&text, "F_sim").expect("simulated cell");
    assert!((a - 7.0 / 8.0).abs() < 1e-12, "F = {a}");
    assert!((s - 7.0 / 8.0).abs() < 1e-6, "simulated F = {s}");
}

fn write_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("sweep.json");
    std::fs::write(
        &path,
        r#"{
            "scenario": "late",
            "gamma0_values": [0.95, 0.3],
            "omega_over_t_values": [4.0, 2.0],
            "n_values": [1],
            "m_values": [2, 1, 3],
            "method": "both"
        }"#,
    )
    .unwrap();
    path
}

/// Everything except the wall-clock column, which may legitimately vary.
fn strip_wall_ms(csv: &str) -> String {
    csv.lines()
        .map(|l| l.rsplit_once(',').expect("wall_ms column").0)
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn sweep_output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out1 = dir.path().join("t1.csv");
    let out2 = dir.path().join("t2.csv");
    for (threads, out) in [("1", &out1), ("2", &out2)] {
        let run = horizon(&[
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--threads",
            threads,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(run.status.success(), "sweep failed: {run:?}");
    }
    let csv1 = std::fs::read_to_string(&out1).unwrap();
    let csv2 = std::fs::read_to_string(&out2).unwrap();
    assert_eq!(strip_wall_ms(&csv1), strip_wall_ms(&csv2));
    // Lexicographic row order: (gamma0, omega_over_t, N, M), ascending.
    let keys: Vec<(f64, f64, usize, usize)> = csv1
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (
                c[0].parse().unwrap(),
                c[1].parse().unwrap(),
                c[2].parse().unwrap(),
                c[3].parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(keys.len(), 12);
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted, "rows out of lexicographic order");
    assert!(!out1.with_file_name("t1.csv.tmp").exists(), "leftover temp file");
}

#[test]
fn sweep_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"scenario": "late", "gamma0_values": [0.5], "omega_over_t_values": [2.0],
            "n_values": [1], "m_values": [1], "gamma0_valuse": [0.1]}"#,
    )
    .unwrap();
    let out = horizon(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("gamma0_valuse"), "stderr: {err}");
}

#[test]
fn json_format_emits_a_parseable_array() {
    let out = horizon(&[
        "fidelity", "--gamma0", "1.0", "--omega-over-t", "2", "--m", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    let row = &rows.as_array().expect("array")[0];
    assert_eq!(row["M"], 2);
    let f = row["F_analytic"].as_f64().unwrap();
    assert!((f - 2.0 / 3.0).abs() < 1e-12);
    assert!(row["F_sim"].is_null());
}

#[test]
fn state_prints_matching_analytic_and_simulated_columns() {
    let out = horizon(&[
        "state", "--gamma0", "1.0", "--omega-over-t", "0.6931471805599453", "--m-max", "4",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let row0 = text
        .lines()
        .find(|l| l.trim_start().starts_with("0 "))
        .expect("m = 0 row");
    let cells: Vec<f64> = row0
        .split_whitespace()
        .skip(1)
        .map(|c| c.parse().unwrap())
        .collect();
    // beta^2 = 1/2 here, so the thermal law starts at p(0|0) = 2/3.
    assert!((cells[2] - 2.0 / 3.0).abs() < 1e-8, "p(0|0) = {}", cells[2]);
    let worst = text
        .lines()
        .find_map(|l| l.strip_prefix("# max |analytic - simulated| over printed cells = "))
        .expect("comparison footer")
        .parse::<f64>()
        .unwrap();
    assert!(worst < 1e-8, "columns disagree by {worst}");
}

#[test]
fn validate_quick_passes_and_reports_tail_limits_at_tight_tol() {
    let quick = horizon(&["validate", "--quick"]);
    assert_eq!(quick.status.code(), Some(0));
    let text = stdout_of(&quick);
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() >= 9, "{text}");
    assert!(!text.contains("[FAIL]"), "{text}");

    let tight = horizon(&["validate", "--quick", "--tol", "1e-14"]);
    assert_eq!(tight.status.code(), Some(0));
    let text = stdout_of(&tight);
    assert!(text.contains("[TAIL-LIMITED]"), "{text}");
    assert!(!text.contains("[FAIL]"), "{text}");
}
