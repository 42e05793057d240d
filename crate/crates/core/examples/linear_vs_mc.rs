//! Where linearization breaks down: a long pendulum run.
//!
//! The linearized spread of θ grows without bound as the phase error
//! accumulates, while every Monte-Carlo sample keeps its energy and only the
//! phase decoheres. Pass a directory to also write CSV files for plotting.
//!
//! Run with `cargo run --release --example linear_vs_mc [out_dir]`.

use std::fs::File;
use std::path::PathBuf;

use mcprop::io::{write_linear_csv, write_summary_csv, write_wide_csv};
use mcprop::ode::IntegratorConfig;
use mcprop::pendulum::{simulate_pendulum, Engine};

fn main() -> mcprop::Result<()> {
    let cfg = IntegratorConfig::new(1e-3, 195.0, 20)?;
    let linear = simulate_pendulum(Engine::Linear, 1, &cfg)?;
    let mc = simulate_pendulum(Engine::Mc(100), 1, &cfg)?;
    let (ls, ms) = (linear.theta_summary(), mc.theta_summary());

    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "t", "linear std", "mc std", "mc |mean|"
    );
    for t in [0.5, 5.0, 25.0, 50.0, 100.0, 150.0, 195.0] {
        let i = ls.iter().position(|r| r.t >= t - 1e-9).unwrap();
        // the spread oscillates with the phase, so report the peak over the
        // preceding second
        let window = |rows: &[mcprop::pendulum::SummaryRow],
                      f: fn(&mcprop::pendulum::SummaryRow) -> f64| {
            rows.iter()
                .filter(|r| r.t > t - 1.0 && r.t <= t + 1e-9)
                .map(f)
                .fold(0.0, f64::max)
        };
        println!(
            "{:>6} {:>12.4} {:>12.4} {:>12.4}",
            ls[i].t,
            window(&ls, |r| r.std),
            window(&ms, |r| r.std),
            window(&ms, |r| r.mean.abs())
        );
    }
    let drift = mc.particles().unwrap().max_relative_energy_drift();
    println!("largest per-sample energy drift: {drift:.2e}");

    if let Some(dir) = std::env::args_os().nth(1).map(PathBuf::from) {
        write_linear_csv(File::create(dir.join("linear.csv"))?, &ls)?;
        write_summary_csv(File::create(dir.join("mc.csv"))?, &ms)?;
        write_wide_csv(
            File::create(dir.join("mc_samples.csv"))?,
            &mc.samples(1).unwrap(),
        )?;
        println!("wrote CSV files to {}", dir.display());
    }
    Ok(())
}
