//! Uncertain numbers behave like ordinary numbers.
//!
//! Run with `cargo run --example basic_session`.

use std::f64::consts::PI;

use mcprop::sampling::{self, ScalarDistribution};
use mcprop::{PlusMinus, StaticParticles};

fn main() {
    let mut rng = sampling::seeded_rng(0);

    let a = sampling::pm(PI, 0.1, 500, &mut rng);
    println!("a = π ± 0.1            -> {a}");
    println!("std(a)                 -> {:?}", a.std());
    println!("sin(a)                 -> {}", a.sin());

    // Every operation pairs sample i with sample i, so a value is perfectly
    // correlated with itself and identities hold sample by sample.
    let r = &a.sin() / &a.cos() - a.tan();
    println!("sin(a)/cos(a) - tan(a) -> {r}");
    #[allow(clippy::eq_op)]
    let zero = &a - &a;
    println!("a - a                  -> {zero}");

    // `pm` on a plain f64 draws from a deterministic per-thread generator.
    let b = 2.0.pm(0.1);
    println!("2.0.pm(0.1)            -> {b}");

    // Small fixed counts can live on the stack.
    let s = StaticParticles::<100>::pm(2.0, 0.1, &mut rng);
    println!("static 2 ± 0.1         -> {s}");

    let poisson = ScalarDistribution::poisson(3.0).unwrap();
    let c = sampling::from_distribution(&poisson, 500, &mut rng).unwrap();
    println!("Poisson(3)             -> {c}");

    let stats = a.summary(&[0.05, 0.5, 0.95]).unwrap();
    println!("quantiles of a         -> {:?}", stats.quantiles);
}
