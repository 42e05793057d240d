//! Work that does not depend on the uncertain input is done once.
//!
//! In a least-squares fit with a certain design matrix and uncertain
//! observations, the QR factorization is computed once and only the cheap
//! back-substitution runs per sample.
//!
//! Run with `cargo run --release --example shared_computation`.

use mcprop::{sampling, Particles};
use nalgebra::{DMatrix, DVector};

fn main() {
    let mut rng = sampling::seeded_rng(5);
    let ts: Vec<f64> = (0..20).map(|i| i as f64 * 0.5).collect();
    let a = DMatrix::from_fn(ts.len(), 2, |i, j| if j == 0 { 1.0 } else { ts[i] });
    // observations of 1 + 0.5 t, each with independent noise
    let y: Vec<Particles> = ts
        .iter()
        .map(|t| sampling::pm(1.0 + 0.5 * t, 0.2, 500, &mut rng))
        .collect();

    let qr = a.clone().qr();
    let (q, r) = (qr.q(), qr.r());
    let coef = |k: usize| {
        let obs = DVector::from_fn(ts.len(), |i, _| y[i].samples()[k]);
        r.solve_upper_triangular(&(q.transpose() * obs)).unwrap()
    };
    let fits: Vec<DVector<f64>> = (0..500).map(coef).collect();
    let intercept = Particles::from_samples(fits.iter().map(|c| c[0]).collect()).unwrap();
    let slope = Particles::from_samples(fits.iter().map(|c| c[1]).collect()).unwrap();
    println!("intercept {intercept}, slope {slope}");

    // Because samples stay aligned, derived quantities keep their correlation.
    let at_ten = &intercept + &slope * 10.0;
    println!("prediction at t = 10: {at_ten}");
}
