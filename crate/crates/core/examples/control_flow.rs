//! Branching on uncertain values.
//!
//! A comparison between particles is only answered when every sample agrees.
//! A function with data-dependent branches is instead lifted so that it runs
//! once per sample.
//!
//! Run with `cargo run --example control_flow`.

use mcprop::particles::{ComparisonPolicy, Relation};
use mcprop::{lift_unary, sampling};

fn negsquare(x: f64) -> f64 {
    if x > 0.0 {
        x * x
    } else {
        -x * x
    }
}

fn main() {
    let mut rng = sampling::seeded_rng(3);
    let p = sampling::pm(0.0, 1.0, 500, &mut rng);

    match p.gt(0.0) {
        Ok(b) => println!("p > 0 is {b}"),
        Err(e) => println!("p > 0 refused: {e}"),
    }
    let by_mean = p
        .compare(0.0, Relation::Gt, ComparisonPolicy::ByMean)
        .unwrap();
    println!("p > 0 by mean: {by_mean}");

    let far = sampling::pm(10.0, 0.1, 500, &mut rng);
    println!("10 ± 0.1 > 0 is {}", far.gt(0.0).unwrap());

    let lifted = lift_unary(negsquare);
    let q = lifted(&p);
    let negative = q.samples().iter().filter(|x| **x < 0.0).count();
    println!(
        "negsquare(p) = {q}, {negative} of {} samples negative",
        q.len()
    );
}
