//! Writing a model once against the `Number` trait.
//!
//! Run with `cargo run --example generic_models`.

use mcprop::{sampling, LinUncertain, Number, Single, StaticParticles};

/// Projectile range on flat ground, `v² sin(2θ) / g`.
fn range<N: Number>(v: N, angle: N, g: f64) -> N {
    (v.clone() * v) * (angle * 2.0).sin() / g
}

fn main() {
    let mut rng = sampling::seeded_rng(11);
    println!("f64       {}", range(20.0, 0.6, 9.81));
    println!("f32       {:?}", range(Single(20.0), Single(0.6), 9.81));
    println!(
        "linear    {}",
        range(
            LinUncertain::source(20.0, 0.5),
            LinUncertain::source(0.6, 0.05),
            9.81
        )
    );
    println!(
        "particles {}",
        range(
            sampling::pm(20.0, 0.5, 1000, &mut rng),
            sampling::pm(0.6, 0.05, 1000, &mut rng),
            9.81
        )
    );
    println!(
        "static    {}",
        range(
            StaticParticles::<64>::pm(20.0, 0.5, &mut rng),
            StaticParticles::<64>::pm(0.6, 0.05, &mut rng),
            9.81
        )
    );
}
