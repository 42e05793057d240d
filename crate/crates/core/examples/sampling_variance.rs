//! Systematic versus random sampling.
//!
//! Run with `cargo run --release --example sampling_variance`.

use mcprop::sampling::{self, random_samples, systematic_samples, ScalarDistribution};

fn main() {
    let d = ScalarDistribution::normal(0.0, 1.0).unwrap();
    let estimate = |systematic: bool| -> Vec<f64> {
        (0..200)
            .map(|seed| {
                let mut rng = sampling::seeded_rng(seed);
                let p = if systematic {
                    systematic_samples(&d, 100, &mut rng)
                } else {
                    random_samples(&d, 100, &mut rng)
                };
                p.unwrap().samples().iter().map(|x| x.exp()).sum::<f64>() / 100.0
            })
            .collect()
    };
    let var = |xs: &[f64]| {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
    };
    println!("variance of the estimate of E[exp(X)] over 200 seeds, N = 100");
    println!("systematic {:.3e}", var(&estimate(true)));
    println!("random     {:.3e}", var(&estimate(false)));
}
