//! Self-checking demonstrations behind the `demo` and `mv-demo` commands.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rand::distr::Open01;
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::particles::{cov, Particles};
use crate::sampling::{self, standard_normal_quantile, ScalarDistribution};
use crate::static_particles::StaticParticles;

/// Printed session plus the outcome of each embedded check.
#[derive(Debug, Clone, Default)]
pub struct Transcript {
    pub text: String,
    pub failures: Vec<String>,
}

impl Transcript {
    fn line(&mut self, input: &str, output: impl std::fmt::Display) {
        let _ = writeln!(self.text, "> {input}\n{output}");
    }

    fn check(&mut self, label: &str, passed: bool, detail: impl std::fmt::Display) {
        let status = if passed { "ok" } else { "FAILED" };
        let line = format!("check {label}: {status} ({detail})");
        let _ = writeln!(self.text, "{line}");
        if !passed {
            self.failures.push(line);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The basic session: construction, statistics, a nonlinear function,
/// self-correlation and a discrete distribution.
pub fn session(seed: u64) -> Transcript {
    let mut rng = sampling::seeded_rng(seed);
    let mut tr = Transcript::default();

    let a = sampling::pm(PI, 0.1, 500, &mut rng);
    tr.line("a = π ± 0.1", &a);
    tr.check("rendering", a.to_string() == "P500(3.142 ± 0.1)", &a);

    let b = StaticParticles::<100>::pm(2.0, 0.1, &mut rng);
    tr.line("b = 2 ± 0.1 (static, 100 samples)", b);

    let sd = a.std();
    tr.line("std(a)", format!("{sd:?}"));
    tr.check(
        "std",
        (sd - 0.1).abs() <= 0.005 * 0.1,
        format!("{sd:?} vs 0.1"),
    );

    let s = a.sin();
    tr.line("sin(a)", &s);
    let ok = (s.std() - 0.0995).abs() <= 0.02 * 0.0995 && s.mean().abs() < 1e-3;
    tr.check(
        "sin",
        ok,
        format!("mean {:.3e}, std {:.5}", s.mean(), s.std()),
    );

    let r = &a.sin() / &a.cos() - a.tan();
    tr.line("sin(a)/cos(a) - tan(a)", &r);
    let worst = r.samples().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    tr.check(
        "self-correlation",
        worst <= 1e-12,
        format!("max |residual| {worst:.3e}"),
    );

    let c = sampling::from_distribution(
        &ScalarDistribution::poisson(3.0).expect("valid rate"),
        500,
        &mut rng,
    )
    .expect("finite quantiles");
    tr.line("c = Poisson(3) with 500 samples", &c);
    let ok = (c.mean() - 3.0).abs() < 0.15 && (c.std() - 3f64.sqrt()).abs() < 0.15;
    tr.check(
        "poisson",
        ok,
        format!("mean {:.3}, std {:.3}", c.mean(), c.std()),
    );
    tr
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MvDemo {
    pub n: usize,
    pub seed: u64,
    pub a: [[f64; 2]; 2],
    pub mean: [f64; 2],
    pub cov_empirical: [[f64; 2]; 2],
    pub cov_theoretical: [[f64; 2]; 2],
    pub frobenius_rel_err: f64,
    /// Componentwise std of `(2A)·p` divided by that of `A·p`.
    pub std_ratio_doubled: [f64; 2],
}

fn rows(m: &DMatrix<f64>) -> [[f64; 2]; 2] {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

fn transform(a: &DMatrix<f64>, p: &[Particles]) -> Vec<Particles> {
    (0..2)
        .map(|i| &p[0] * a[(i, 0)] + &p[1] * a[(i, 1)])
        .collect()
}

/// `y = A·p` for `p = [1 ± 1, 5 ± 2]` and a random standard-normal `A`, or
/// the identity when `identity` is set.
pub fn mv_demo(seed: u64, n: usize, identity: bool) -> Result<MvDemo> {
    let mut rng = sampling::seeded_rng(seed);
    let p = [
        sampling::pm(1.0, 1.0, n, &mut rng),
        sampling::pm(5.0, 2.0, n, &mut rng),
    ];
    let a = if identity {
        DMatrix::identity(2, 2)
    } else {
        DMatrix::from_fn(2, 2, |_, _| standard_normal_quantile(rng.sample(Open01)))
    };
    let y = transform(&a, &p);
    let emp = cov(&y)?;
    let theory = &a * DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 4.0])) * a.transpose();
    let err = (&emp - &theory).norm() / theory.norm();
    let y2 = transform(&(&a * 2.0), &p);
    Ok(MvDemo {
        n,
        seed,
        a: rows(&a),
        mean: [y[0].mean(), y[1].mean()],
        cov_empirical: rows(&emp),
        cov_theoretical: rows(&theory),
        frobenius_rel_err: err,
        std_ratio_doubled: [y2[0].std() / y[0].std(), y2[1].std() / y[1].std()],
    })
}
