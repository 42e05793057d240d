//! Worst-case optimization over uncertain coefficients.
//!
//! Maximize `3x + 2y` subject to `c·x + d·y ≤ 10` for every sample of
//! `c, d = 1 ± 0.1`.
//!
//! Run with `cargo run --release --example robust_opt`.

use mcprop::robust::{minimize, robust_cost, DescentConfig, RobustProblem};

fn main() -> mcprop::Result<()> {
    let prob = RobustProblem::standard(500, 1);
    println!("cost at (1, 1): {}", robust_cost([1.0, 1.0], &prob));

    let sol = minimize(&prob, [1.0, 1.0], &DescentConfig::default())?;
    println!(
        "optimum ({:.4}, {:.4}) with cost {:.4} after {} iterations ({:?})",
        sol.pars[0], sol.pars[1], sol.cost, sol.iterations, sol.stop
    );
    println!("worst case of c·x + d·y: {:.9}", sol.worst_case);

    // the nominal problem with c = d = 1 reaches -30; robustness has a price
    println!("price of robustness: {:.4}", sol.cost + 30.0);
    Ok(())
}
