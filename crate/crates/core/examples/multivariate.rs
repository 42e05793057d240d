//! Correlated inputs and the covariance of a linear transform.
//!
//! Run with `cargo run --example multivariate`.

use mcprop::sampling::{self, mv_normal_particles, MvNormalSpec};
use mcprop::{cov, Particles};
use nalgebra::{DMatrix, DVector};

fn main() {
    let mut rng = sampling::seeded_rng(7);

    // p = [1 ± 1, 5 ± 2], independent
    let p = [
        sampling::pm(1.0, 1.0, 500, &mut rng),
        sampling::pm(5.0, 2.0, 500, &mut rng),
    ];
    let a = DMatrix::from_row_slice(2, 2, &[0.3, -1.2, 1.1, 0.4]);
    let y: Vec<Particles> = (0..2)
        .map(|i| &p[0] * a[(i, 0)] + &p[1] * a[(i, 1)])
        .collect();
    println!("y = A·p = [{}, {}]", y[0], y[1]);

    let sigma = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 4.0]));
    println!("empirical covariance{}", cov(&y).unwrap());
    println!("A·Σ·Aᵀ{}", &a * sigma * a.transpose());

    // Draw jointly from a full covariance through its Cholesky factor.
    let spec = MvNormalSpec::new(
        vec![0.0, 0.0],
        DMatrix::from_row_slice(2, 2, &[1.0, 0.9, 0.9, 1.0]),
    )
    .unwrap();
    let z = mv_normal_particles(&spec, 1000, &mut rng).unwrap();
    let c = cov(&z).unwrap();
    println!(
        "sample correlation of a 0.9 pair: {:.3}",
        c[(0, 1)] / (c[(0, 0)] * c[(1, 1)]).sqrt()
    );
}
