//! Building particles from distributions.
//!
//! The default scheme is systematic sampling: sample `i` of `N` is the
//! quantile at the midpoint `(i − 0.5)/N`, so the empirical marginal matches
//! the target with minimal discrepancy. The samples are then shuffled with the
//! caller's RNG; without the shuffle, two independently constructed values
//! would be perfectly rank-correlated at the index level.
//!
//! All randomness comes from a caller-owned RNG. [`seeded_rng`] returns the
//! documented default, ChaCha8 seeded from a `u64`, which is reproducible
//! bit for bit across platforms.

mod distribution;
mod sigma;

use std::cell::RefCell;

use nalgebra::{DMatrix, DVector};
use rand::distr::Open01;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use distribution::{standard_normal_quantile, QuantileFn, ScalarDistribution};
pub use sigma::{sigma_points, sigma_points_1d, SigmaPointSet};

use crate::error::{Error, Result};
use crate::linalg::{cholesky_psd, validate_psd};
use crate::particles::{Particles, DEFAULT_COUNT};

pub type DefaultRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> DefaultRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Midpoint quantile grid `(i − 0.5)/N`, `i = 1…N`.
pub fn systematic_grid(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (1..=n).map(|i| (i as f64 - 0.5) / nf).collect()
}

fn checked_quantile(d: &ScalarDistribution, u: f64) -> Result<f64> {
    let x = d.quantile(u);
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFiniteQuantile(u))
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Empty)
    } else {
        Ok(())
    }
}

/// Systematic samples of `d`, randomly permuted.
pub fn systematic_samples<R: Rng + ?Sized>(
    d: &ScalarDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Particles> {
    check_count(n)?;
    let mut xs = systematic_grid(n)
        .into_iter()
        .map(|u| checked_quantile(d, u))
        .collect::<Result<Vec<_>>>()?;
    xs.shuffle(rng);
    Particles::from_samples(xs)
}

/// Independent draws by inverse-CDF of open-interval uniforms.
pub fn random_samples<R: Rng + ?Sized>(
    d: &ScalarDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Particles> {
    check_count(n)?;
    let xs = (0..n)
        .map(|_| checked_quantile(d, rng.sample(Open01)))
        .collect::<Result<Vec<_>>>()?;
    Particles::from_samples(xs)
}

/// Particles for a distribution, using the systematic scheme.
pub fn from_distribution<R: Rng + ?Sized>(
    d: &ScalarDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Particles> {
    systematic_samples(d, n, rng)
}

/// Gaussian particles `mu ± sigma`. `sigma == 0` gives `n` copies of `mu`.
///
/// Panics if `sigma` is negative or not finite, or `n == 0`.
pub fn pm<R: Rng + ?Sized>(mu: f64, sigma: f64, n: usize, rng: &mut R) -> Particles {
    let d = ScalarDistribution::normal(mu, sigma).expect("sigma must be finite and non-negative");
    systematic_samples(&d, n, rng).expect("normal quantiles are finite on the midpoint grid")
}

thread_local! {
    static THREAD_RNG: RefCell<DefaultRng> = RefCell::new(seeded_rng(0));
}

/// Reseeds the per-thread generator behind [`PlusMinus`].
pub fn reseed_thread_rng(seed: u64) {
    THREAD_RNG.with(|r| *r.borrow_mut() = seeded_rng(seed));
}

/// `x.pm(σ)` builds [`DEFAULT_COUNT`] Gaussian particles from a per-thread,
/// deterministically seeded generator.
pub trait PlusMinus {
    fn pm(self, sigma: f64) -> Particles;
}

impl PlusMinus for f64 {
    fn pm(self, sigma: f64) -> Particles {
        THREAD_RNG.with(|r| pm(self, sigma, DEFAULT_COUNT, &mut *r.borrow_mut()))
    }
}

/// Mean vector and covariance of a multivariate normal.
#[derive(Debug, Clone, PartialEq)]
pub struct MvNormalSpec {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl MvNormalSpec {
    pub fn new(mean: Vec<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let k = mean.len();
        if k == 0 {
            return Err(Error::Empty);
        }
        if cov.nrows() != k || cov.ncols() != k {
            return Err(Error::Domain(format!(
                "mean has {k} entries but covariance is {}x{}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        validate_psd(&cov)?;
        Ok(Self {
            mean: DVector::from_vec(mean),
            cov,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }
}

/// Correlated Gaussian particles `mean + L·z`, where `z` are independent
/// systematic standard-normal particles and `L` the lower Cholesky factor.
pub fn mv_normal_particles<R: Rng + ?Sized>(
    spec: &MvNormalSpec,
    n: usize,
    rng: &mut R,
) -> Result<Vec<Particles>> {
    check_count(n)?;
    let l = cholesky_psd(&spec.cov)?;
    let k = spec.dim();
    let z: Vec<Particles> = (0..k).map(|_| pm(0.0, 1.0, n, rng)).collect();
    Ok((0..k)
        .map(|i| {
            let mut acc = Particles::constant(spec.mean[i], n);
            for (j, zj) in z.iter().enumerate().take(i + 1) {
                let lij = l[(i, j)];
                if lij != 0.0 {
                    acc += zj * lij;
                }
            }
            acc
        })
        .collect())
}
