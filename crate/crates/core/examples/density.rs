//! Kernel density estimate of a propagated distribution.
//!
//! Run with `cargo run --example density`.

use mcprop::particles::{kde, silverman_bandwidth, Bandwidth};
use mcprop::sampling;

fn main() {
    let x = sampling::pm(0.5, 0.3, 2000, &mut sampling::seeded_rng(2));
    let y = x.exp();
    let h = silverman_bandwidth(&y);
    println!("exp(0.5 ± 0.3) = {y}, bandwidth {h:.4}");

    let grid: Vec<f64> = (0..=30).map(|i| 0.5 + 0.1 * i as f64).collect();
    for (g, d) in kde(&y, Bandwidth::Silverman, &grid).unwrap() {
        println!("{g:5.2} {:<60} {d:.3}", "#".repeat((d * 40.0) as usize));
    }
}
