//! The sample-vector uncertain number.
//!
//! A [`Particles`] value holds `N` unweighted samples of one random quantity.
//! Every overloaded operation is applied sample by sample, and sample `i` of
//! every value derived from the same sources refers to the same random
//! realization. That index alignment is what makes `p - p` exactly zero and
//! `sin(p) / cos(p) - tan(p)` vanish without any symbolic bookkeeping.

mod compare;
mod functions;
mod lift;
mod ops;
mod stats;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use compare::{default_policy, set_default_policy, ComparisonPolicy, Relation};
pub use functions::{BinaryOp, Operand, UnaryFn};
pub use lift::{lift_nary, lift_unary};
pub use stats::{cov, kde, silverman_bandwidth, Bandwidth, SummaryStats};

/// Default sample count, mirroring the common 500-particle configuration.
pub const DEFAULT_COUNT: usize = 500;

/// An uncertain scalar represented by a fixed-count vector of samples.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Particles {
    samples: Vec<f64>,
}

impl Particles {
    /// Wraps `values` as particles, keeping their order.
    pub fn from_samples(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { samples: values })
    }

    /// `n` copies of `value`: a certain quantity in particle form.
    ///
    /// Panics if `n == 0`.
    pub fn constant(value: f64, n: usize) -> Self {
        assert!(n >= 1, "particle count must be at least 1");
        Self {
            samples: vec![value; n],
        }
    }

    pub(crate) fn from_vec_unchecked(samples: Vec<f64>) -> Self {
        debug_assert!(!samples.is_empty());
        Self { samples }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; kept for API symmetry with slices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample variance with divisor `N - 1`; zero for a single sample.
    pub fn var(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        let ss: f64 = self.samples.iter().map(|&x| (x - m) * (x - m)).sum();
        ss / (n - 1) as f64
    }

    /// Sample standard deviation with divisor `N - 1`; zero for a single sample.
    pub fn std(&self) -> f64 {
        self.var().sqrt()
    }

    /// Smallest sample (the particle minimum).
    pub fn sample_min(&self) -> f64 {
        self.samples.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest sample (the particle maximum, i.e. the worst case of an upper bound).
    pub fn sample_max(&self) -> f64 {
        self.samples
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Empirical quantile: linear interpolation at position `q·(N−1)` of the
    /// sorted samples.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        let sorted = self.sorted();
        quantile_sorted(&sorted, q)
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5).expect("0.5 is a valid probability")
    }

    pub(crate) fn sorted(&self) -> Vec<f64> {
        let mut s = self.samples.clone();
        s.sort_by(|a, b| a.total_cmp(b));
        s
    }

    /// True when every sample is finite.
    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|x| x.is_finite())
    }

    pub(crate) fn check_len(&self, other: &Particles) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::CountMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!(
            "quantile probability {q} outside [0, 1]"
        )));
    }
    let n = sorted.len();
    if n == 1 {
        return Ok(sorted[0]);
    }
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = pos - lo as f64;
    if frac == 0.0 {
        return Ok(sorted[lo]);
    }
    Ok(sorted[lo] + frac * (sorted[hi] - sorted[lo]))
}

impl TryFrom<Vec<f64>> for Particles {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::from_samples(v)
    }
}

impl From<Particles> for Vec<f64> {
    fn from(p: Particles) -> Self {
        p.samples
    }
}

/// Rounds to `digits` significant digits.
pub(crate) fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// Renders `mean ± std` in the compact `P<N>(…)` form; the mean carries four
/// significant digits and the spread three.
impl fmt::Display for Particles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = round_sig(self.mean(), 4);
        let s = round_sig(self.std(), 3);
        if s == 0.0 {
            write!(f, "P{}({:?})", self.len(), m)
        } else {
            write!(f, "P{}({:?} ± {:?})", self.len(), m, s)
        }
    }
}

impl fmt::Debug for Particles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
