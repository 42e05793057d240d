//! The installed binary, driven as a user would.

use std::path::Path;
use std::process::{Command, Output};

use mcprop::io::{read_particles_csv, read_summary_csv, read_wide_csv};
use mcprop::sampling::{self, ScalarDistribution};
use serde_json::Value;

fn mcprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcprop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = mcprop(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sample_csv_matches_library() {
    let out = ok(&[
        "--seed", "4", "sample", "--dist", "uniform", "--lo", "-2", "--hi", "2", "--n", "64",
    ]);
    let p = read_particles_csv(out.stdout.as_slice()).unwrap();
    let d = ScalarDistribution::uniform(-2.0, 2.0).unwrap();
    let q = sampling::systematic_samples(&d, 64, &mut sampling::seeded_rng(4)).unwrap();
    assert_eq!(p.samples(), q.samples());
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("P64("));
}

#[test]
fn sample_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = ok(&[
        "--out",
        arg(&path),
        "--format",
        "json",
        "sample",
        "--dist",
        "poisson",
        "--rate",
        "3",
    ]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("P500(2.998"));
    let p = mcprop::io::particles_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(p.len(), 500);
}

#[test]
fn pendulum_linear_agrees_with_mc_early() {
    let run = |mode: &str| {
        let out = ok(&[
            "--seed",
            "1",
            "pendulum",
            "--mode",
            mode,
            "--n",
            "500",
            "--t-end",
            "0.5",
            "--record-every",
            "50",
        ]);
        read_summary_csv(out.stdout.as_slice()).unwrap()
    };
    let (lin, mc) = (run("linear"), run("mc"));
    let (l, m) = (lin.last().unwrap(), mc.last().unwrap());
    assert!((l.t - 0.5).abs() < 1e-12 && (m.t - 0.5).abs() < 1e-12);
    assert!((l.std / m.std - 1.0).abs() < 0.1, "{l:?} vs {m:?}");
    assert!((l.mean - m.mean).abs() < 0.1 * m.std);
}

#[test]
fn pendulum_wide_output() {
    let dir = tempfile::tempdir().unwrap();
    let wide = dir.path().join("wide.csv");
    ok(&[
        "pendulum",
        "--mode",
        "mc",
        "--n",
        "16",
        "--t-end",
        "0.1",
        "--wide",
        arg(&wide),
    ]);
    let rows = read_wide_csv(std::fs::File::open(&wide).unwrap()).unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.1.len() == 16));
    assert_eq!(rows[0].0, 0.0);
}

#[test]
fn pendulum_json() {
    let out = ok(&[
        "--format", "json", "pendulum", "--mode", "sigma", "--t-end", "0.05",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["engine"], "sigma");
    assert_eq!(v["n"], 7);
    assert_eq!(v["theta"].as_array().unwrap().len(), 6);
}

#[test]
fn robust_seed_one_is_feasible() {
    let out = ok(&["--seed", "1", "robust"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let worst = v["worst_case"].as_f64().unwrap();
    assert!((10.0 - 1e-3..=10.0 + 1e-9).contains(&worst), "{v}");
    assert!(v["cost"].as_f64().unwrap() < -20.0);
    let pars = v["pars"].as_array().unwrap();
    assert!(pars.iter().all(|x| x.as_f64().unwrap() >= 0.0));
}

#[test]
fn mv_demo_json() {
    // a single draw can exceed 5%; the rate over many seeds is checked elsewhere
    let out = ok(&["--seed", "1", "mv-demo"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["frobenius_rel_err"].as_f64().unwrap() < 0.05);
    assert_eq!(v["std_ratio_doubled"], serde_json::json!([2.0, 2.0]));
}

#[test]
fn demo_passes_its_checks() {
    let out = ok(&["demo"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("P500(3.142 ± 0.1)"));
    assert!(!text.contains("FAILED"));
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(
        mcprop(&["pendulum", "--mode", "euler"]).status.code(),
        Some(2)
    );
    assert_eq!(mcprop(&["sample", "--sigma", "-1"]).status.code(), Some(2));
    assert_eq!(
        mcprop(&["robust", "--x0", "20", "--y0", "20"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        mcprop(&["--out", "/nonexistent/dir/x.csv", "demo"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["--seed", "7", "sample", "--random", "--n", "100"][..],
        &["--seed", "7", "mv-demo", "--n", "300"],
        &["--seed", "7", "robust", "--n", "200"],
        &[
            "--seed", "7", "pendulum", "--mode", "mc", "--n", "32", "--t-end", "0.5",
        ],
    ] {
        assert_eq!(ok(args).stdout, ok(args).stdout, "{args:?}");
    }
}
