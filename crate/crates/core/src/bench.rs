//! Wall-clock comparison of the propagation engines on the pendulum.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::IntegratorConfig;
use crate::pendulum::{simulate_pendulum_threads, Engine};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    /// Sample count for the two Monte-Carlo engines.
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub seed: u64,
    /// Timed runs per engine, after one untimed warmup.
    pub repeats: usize,
    /// Threads for the naive engine only.
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n: 100,
            dt: 1e-3,
            t_end: 100.0,
            seed: 0,
            repeats: 5,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub engine: String,
    pub n: usize,
    /// Median wall-clock time.
    pub wall_ms: f64,
    /// Naive Monte-Carlo time over this engine's time.
    pub speedup_vs_naive: f64,
    /// This engine's time over the batched Monte-Carlo time.
    pub relative_to_mc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub dt: f64,
    pub t_end: f64,
    pub repeats: usize,
    pub threads: usize,
    pub host: String,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, engine: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.engine == engine)
    }
}

/// Operating system, architecture, CPU model and core count.
pub fn host_description() -> String {
    let cpu = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split(':').nth(1))
                .map(|m| m.trim().to_string())
        })
        .unwrap_or_else(|| "unknown cpu".into());
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{}-{}, {cpu}, {cores} logical cores",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

fn time_engine(engine: Engine, cfg: &BenchConfig, icfg: &IntegratorConfig) -> Result<f64> {
    simulate_pendulum_threads(engine, cfg.seed, icfg, cfg.threads)?;
    let mut times = Vec::with_capacity(cfg.repeats);
    for _ in 0..cfg.repeats {
        let t0 = Instant::now();
        let run = simulate_pendulum_threads(engine, cfg.seed, icfg, cfg.threads)?;
        times.push(t0.elapsed().as_secs_f64() * 1e3);
        std::hint::black_box(run);
    }
    Ok(median(times))
}

/// Times scalar, linear, Monte-Carlo, sigma-point and naive Monte-Carlo
/// simulation, in that order.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.n < 2 {
        return Err(Error::Domain(format!("bench needs n >= 2, got {}", cfg.n)));
    }
    if cfg.repeats == 0 {
        return Err(Error::Domain("repeats must be at least 1".into()));
    }
    let steps = (cfg.t_end / cfg.dt).round() as usize;
    let icfg = IntegratorConfig::new(cfg.dt, cfg.t_end, (steps / 100).max(1))?;
    let engines = [
        Engine::Scalar64,
        Engine::Linear,
        Engine::Mc(cfg.n),
        Engine::Sigma,
        Engine::NaiveMc(cfg.n),
    ];
    let walls = engines
        .iter()
        .map(|e| time_engine(*e, cfg, &icfg))
        .collect::<Result<Vec<_>>>()?;
    let (mc, naive) = (walls[2], walls[4]);
    let rows = engines
        .iter()
        .zip(&walls)
        .map(|(e, &w)| BenchRow {
            engine: e.name().to_string(),
            n: e.count(),
            wall_ms: w,
            speedup_vs_naive: naive / w,
            relative_to_mc: w / mc,
        })
        .collect();
    Ok(BenchReport {
        seed: cfg.seed,
        dt: cfg.dt,
        t_end: cfg.t_end,
        repeats: cfg.repeats,
        threads: cfg.threads,
        host: host_description(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medians() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn report_shape() {
        let cfg = BenchConfig {
            n: 8,
            t_end: 0.05,
            repeats: 1,
            ..Default::default()
        };
        let r = run_bench(&cfg).unwrap();
        let names: Vec<_> = r.rows.iter().map(|r| r.engine.as_str()).collect();
        assert_eq!(names, ["scalar64", "linear", "mc", "sigma", "naive"]);
        assert!(!r.host.is_empty());
        assert!(r.rows.iter().all(|r| r.wall_ms > 0.0));
        assert_eq!(r.row("mc").unwrap().relative_to_mc, 1.0);
        assert_eq!(r.row("naive").unwrap().speedup_vs_naive, 1.0);
        assert_eq!(r.row("sigma").unwrap().n, 7);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = BenchConfig {
            n: 1,
            ..Default::default()
        };
        assert!(run_bench(&cfg).is_err());
    }
}
