//! End-to-end checks of the binary: exit codes, artifact layout, and
//! determinism of the emitted CSV bytes.
//!
//! Solver budgets are kept tiny; these tests exercise wiring, not
//! estimates.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ara() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ara"))
}

fn run(args: &[&str]) -> Output {
    ara().args(args).output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

const SMALL: &[&str] = &["--k", "10", "--m", "5", "--n", "200"];

fn small_run(dir: &Path, command: &str, extra: &[&str]) -> Output {
    let mut args = vec![command];
    args.extend_from_slice(SMALL);
    args.extend_from_slice(&["--out", dir.to_str().unwrap()]);
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn usage_problems_exit_two() {
    let unknown_command = run(&["no-such-command"]);
    assert_eq!(unknown_command.status.code(), Some(2));
    let unknown_flag = run(&["attacker-table", "--frobnicate"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
    let zero_threads = run(&["attacker-table", "--threads", "0"]);
    assert_eq!(zero_threads.status.code(), Some(2));
    assert!(stderr(&zero_threads).contains("thread count"));
}

#[test]
fn configuration_problems_exit_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");

    let missing = run(&[
        "attacker-table",
        "--config",
        "/no/such/file.toml",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("/no/such/file.toml"));

    // Drop one required model field from the bundled configuration.
    let full = include_str!("../src/default.toml");
    let broken: String = full
        .lines()
        .filter(|l| !l.starts_with("fire_rate_per_year"))
        .collect::<Vec<_>>()
        .join("\n");
    let path = dir.path().join("broken.toml");
    fs::write(&path, broken).unwrap();
    let out = run(&[
        "attacker-table",
        "--config",
        path.to_str().unwrap(),
        "--out",
        dir.path().join("out2").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("fire_rate_per_year"),
        "stderr: {}",
        stderr(&out)
    );

    let zero_samples = run(&["defender-rank", "--n", "0"]);
    assert_eq!(zero_samples.status.code(), Some(2));
    assert!(stderr(&zero_samples).contains("samples"));
}

#[test]
fn impossible_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "defender-rank", &["--budget=-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget"), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_sweep_parameter_lists_the_registry() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "sensitivity", &["--parameter", "warp_factor"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("warp_factor"), "stderr: {err}");
    assert!(err.contains("fire_rate_per_year"), "stderr: {err}");
}

#[test]
fn attack_table_rows_are_normalised_after_the_text_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "attacker-table", &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let csv = read(dir.path(), "attack_table.csv");
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("defence,a0,"));
    assert!(header.ends_with(",a30"));

    let mut labels = Vec::new();
    for line in lines {
        let mut cells = line.split(',');
        labels.push(cells.next().unwrap().to_string());
        let sum: f64 = cells.map(|c| c.parse::<f64>().unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-9, "row {line} sums to {sum}");
    }
    assert_eq!(labels.len(), 5);
    assert!(labels.contains(&"none".to_string()));
    assert!(labels.contains(&"1tbps".to_string()));
}

#[test]
fn budget_caps_the_ranked_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "defender-rank", &["--budget", "15000"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let csv = read(dir.path(), "defender_rank.csv");
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 144);
    for row in rows {
        let spend: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(spend <= 15_000.0 + 1e-9, "row over budget: {row}");
    }
}

#[test]
fn sidecar_records_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "defender-rank", &["--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let meta: serde_json::Value = serde_json::from_str(&read(dir.path(), "meta.json")).unwrap();
    assert_eq!(meta["command"], "defender-rank");
    assert_eq!(meta["seed"], 7);
    assert_eq!(meta["hyper_draws"], 10);
    assert_eq!(meta["inner_samples"], 5);
    assert_eq!(meta["samples"], 200);
    let outputs: Vec<&str> = meta["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(outputs, ["attack_table.csv", "defender_rank.csv"]);
    assert!(meta["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn reserve_price_reports_through_stdout_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "reserve-price", &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(stdout.contains("reservation premium"), "stdout: {stdout}");

    let meta: serde_json::Value = serde_json::from_str(&read(dir.path(), "meta.json")).unwrap();
    let reservation = &meta["reservation"];
    assert_eq!(
        reservation["decision"],
        "anti-fire+firewall+1tbps | comprehensive"
    );
    assert_eq!(reservation["baseline_premium_eur"], 400.0);
    assert!(reservation["multiplier"].as_f64().unwrap() >= 1.0);
}

#[test]
fn seed_controls_the_artifact_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    for (out, seed) in [(&a, "1"), (&b, "1"), (&c, "2")] {
        let status = small_run(out, "defender-rank", &["--seed", seed]);
        assert_eq!(status.status.code(), Some(0));
    }
    assert_eq!(read(&a, "defender_rank.csv"), read(&b, "defender_rank.csv"));
    assert_ne!(read(&a, "defender_rank.csv"), read(&c, "defender_rank.csv"));
    assert_eq!(read(&a, "attack_table.csv"), read(&b, "attack_table.csv"));
    assert_ne!(read(&a, "attack_table.csv"), read(&c, "attack_table.csv"));
}

#[test]
fn dad_solve_ranks_the_synthetic_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = small_run(dir.path(), "dad-solve", &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let table = read(dir.path(), "attack_table.csv");
    assert!(table.lines().next().unwrap().starts_with("defence,a0,a1"));
    let rank = read(dir.path(), "defender_rank.csv");
    // Three hardening levels times two recovery speeds.
    assert_eq!(rank.lines().count(), 1 + 6);
    assert!(rank.contains("basic+rapid"));
}
