//! One model, every propagation engine.
//!
//! Run with `cargo run --release --example pendulum`.

use mcprop::ode::IntegratorConfig;
use mcprop::pendulum::{simulate_pendulum, Engine};

fn main() -> mcprop::Result<()> {
    let cfg = IntegratorConfig::new(1e-3, 0.5, 50)?;
    println!(
        "{:<10} {:>10} {:>10} {:>10} {:>10}",
        "engine", "mean θ", "std θ", "q05", "q95"
    );
    for engine in [
        Engine::Scalar32,
        Engine::Scalar64,
        Engine::Linear,
        Engine::Sigma,
        Engine::Mc(500),
        Engine::NaiveMc(500),
    ] {
        let run = simulate_pendulum(engine, 1, &cfg)?;
        let last = *run.theta_summary().last().unwrap();
        println!(
            "{:<10} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            engine.to_string(),
            last.mean,
            last.std,
            last.q05,
            last.q95
        );
    }
    Ok(())
}
