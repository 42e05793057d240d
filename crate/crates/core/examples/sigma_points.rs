//! Deterministic sigma points as a cheap stand-in for many samples.
//!
//! Run with `cargo run --example sigma_points`.

use mcprop::sampling::{self, sigma_points};
use nalgebra::DMatrix;

fn main() {
    let mean = [1.0, -2.0, 0.5];
    let cov = DMatrix::from_row_slice(3, 3, &[0.04, 0.01, 0.0, 0.01, 0.09, 0.02, 0.0, 0.02, 0.01]);
    let set = sigma_points(&mean, &cov).unwrap();
    println!("{} points per dimension for k = {}", set.count(), set.dim());
    println!(
        "population covariance of the points{}",
        set.population_cov()
    );

    // Push both representations through the same nonlinear function.
    let f = |x: &mcprop::Particles| (x * 2.0).sin() + x.powi(2);
    let sp = f(&set.particles()[0]);
    let mc = f(&sampling::pm(
        1.0,
        0.2,
        10_000,
        &mut sampling::seeded_rng(1),
    ));
    let n = sp.len() as f64;
    println!(
        "sigma points: mean {:.4} std {:.4}",
        sp.mean(),
        (sp.var() * (n - 1.0) / n).sqrt()
    );
    println!("10k samples:  mean {:.4} std {:.4}", mc.mean(), mc.std());
}
