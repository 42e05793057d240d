//! First-order (linearized) uncertainty propagation.
//!
//! A [`LinUncertain`] is a central value plus its sensitivity to each
//! independent standard-normal source, `dᵢ = ∂f/∂εᵢ`. Sensitivities are merged
//! by [`SourceId`] on every operation, so correlations through shared inputs
//! are tracked exactly to first order: `x - x` is exactly zero, and affine maps
//! of Gaussian inputs give the exact mean and covariance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::number::Number;
use crate::particles::round_sig;

/// Identifies one independent standard-normal source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceId(u64);

static NEXT_SOURCE: AtomicU64 = AtomicU64::new(0);

impl SourceId {
    pub fn fresh() -> Self {
        SourceId(NEXT_SOURCE.fetch_add(1, Ordering::Relaxed))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Clone, PartialEq)]
pub struct LinUncertain {
    value: f64,
    // sorted by id, no zero entries
    sens: Vec<(SourceId, f64)>,
}

/// Arithmetic operations with a checked entry point in [`lin_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinFn {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
}

impl LinFn {
    fn value_and_slope(self, x: f64) -> (f64, f64) {
        match self {
            LinFn::Sin => (x.sin(), x.cos()),
            LinFn::Cos => (x.cos(), -x.sin()),
            LinFn::Tan => {
                let t = x.tan();
                (t, 1.0 + t * t)
            }
            LinFn::Exp => {
                let e = x.exp();
                (e, e)
            }
            LinFn::Log => (x.ln(), 1.0 / x),
            LinFn::Sqrt => {
                let s = x.sqrt();
                (s, 0.5 / s)
            }
            LinFn::Abs => (x.abs(), if x == 0.0 { f64::NAN } else { x.signum() }),
            LinFn::Asin => (x.asin(), 1.0 / (1.0 - x * x).sqrt()),
            LinFn::Acos => (x.acos(), -1.0 / (1.0 - x * x).sqrt()),
            LinFn::Atan => (x.atan(), 1.0 / (1.0 + x * x)),
            LinFn::Sinh => (x.sinh(), x.cosh()),
            LinFn::Cosh => (x.cosh(), x.sinh()),
            LinFn::Tanh => {
                let t = x.tanh();
                (t, 1.0 - t * t)
            }
        }
    }
}

fn merge(a: &[(SourceId, f64)], ka: f64, b: &[(SourceId, f64)], kb: f64) -> Vec<(SourceId, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let entry = match (a.get(i), b.get(j)) {
            (Some(&(ia, da)), Some(&(ib, db))) if ia == ib => {
                i += 1;
                j += 1;
                (ia, ka * da + kb * db)
            }
            (Some(&(ia, da)), Some(&(ib, _))) if ia < ib => {
                i += 1;
                (ia, ka * da)
            }
            (Some(&(ia, da)), None) => {
                i += 1;
                (ia, ka * da)
            }
            (_, Some(&(ib, db))) => {
                j += 1;
                (ib, kb * db)
            }
            (None, None) => unreachable!(),
        };
        if entry.1 != 0.0 {
            out.push(entry);
        }
    }
    out
}

impl LinUncertain {
    /// A new independent source `mu ± sigma`.
    ///
    /// Panics if `sigma` is negative or not finite.
    pub fn source(mu: f64, sigma: f64) -> Self {
        assert!(
            sigma >= 0.0 && sigma.is_finite(),
            "sigma must be non-negative"
        );
        let sens = if sigma == 0.0 {
            Vec::new()
        } else {
            vec![(SourceId::fresh(), sigma)]
        };
        Self { value: mu, sens }
    }

    pub fn constant(value: f64) -> Self {
        Self {
            value,
            sens: Vec::new(),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn sensitivities(&self) -> &[(SourceId, f64)] {
        &self.sens
    }

    pub fn var(&self) -> f64 {
        self.sens.iter().map(|(_, d)| d * d).sum()
    }

    pub fn std(&self) -> f64 {
        self.var().sqrt()
    }

    fn scaled(&self, k: f64) -> Vec<(SourceId, f64)> {
        merge(&self.sens, k, &[], 0.0)
    }

    /// Applies `f` with its analytic derivative at the central value.
    pub fn apply(&self, f: LinFn) -> Result<Self> {
        let (v, slope) = f.value_and_slope(self.value);
        if !self.sens.is_empty() && !slope.is_finite() {
            return Err(Error::Domain(format!(
                "{f:?} is not differentiable at {}",
                self.value
            )));
        }
        Ok(Self {
            value: v,
            sens: self.scaled(slope),
        })
    }

    fn apply_unchecked(&self, f: LinFn) -> Self {
        let (v, slope) = f.value_and_slope(self.value);
        Self {
            value: v,
            sens: self.scaled(slope),
        }
    }

    pub fn sin(&self) -> Self {
        self.apply_unchecked(LinFn::Sin)
    }

    pub fn cos(&self) -> Self {
        self.apply_unchecked(LinFn::Cos)
    }

    pub fn tan(&self) -> Self {
        self.apply_unchecked(LinFn::Tan)
    }

    pub fn exp(&self) -> Self {
        self.apply_unchecked(LinFn::Exp)
    }

    pub fn powi(&self, k: i32) -> Self {
        let slope = k as f64 * self.value.powi(k - 1);
        Self {
            value: self.value.powi(k),
            sens: self.scaled(slope),
        }
    }
}

/// Covariance of two linearized quantities: the sum of products of shared
/// sensitivities.
pub fn lin_cov(a: &LinUncertain, b: &LinUncertain) -> f64 {
    let (mut i, mut j, mut s) = (0, 0, 0.0);
    while i < a.sens.len() && j < b.sens.len() {
        let (ia, da) = a.sens[i];
        let (ib, db) = b.sens[j];
        match ia.cmp(&ib) {
            std::cmp::Ordering::Equal => {
                s += da * db;
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    s
}

/// Checked arithmetic; division by a zero central value is an error.
pub fn lin_arith(op: LinOp, a: &LinUncertain, b: &LinUncertain) -> Result<LinUncertain> {
    if op == LinOp::Div && b.value == 0.0 {
        return Err(Error::Domain(
            "division by an uncertain value centered at zero".into(),
        ));
    }
    Ok(match op {
        LinOp::Add => a + b,
        LinOp::Sub => a - b,
        LinOp::Mul => a * b,
        LinOp::Div => a / b,
    })
}

impl Add for &LinUncertain {
    type Output = LinUncertain;
    fn add(self, rhs: &LinUncertain) -> LinUncertain {
        LinUncertain {
            value: self.value + rhs.value,
            sens: merge(&self.sens, 1.0, &rhs.sens, 1.0),
        }
    }
}

impl Sub for &LinUncertain {
    type Output = LinUncertain;
    fn sub(self, rhs: &LinUncertain) -> LinUncertain {
        LinUncertain {
            value: self.value - rhs.value,
            sens: merge(&self.sens, 1.0, &rhs.sens, -1.0),
        }
    }
}

impl Mul for &LinUncertain {
    type Output = LinUncertain;
    fn mul(self, rhs: &LinUncertain) -> LinUncertain {
        LinUncertain {
            value: self.value * rhs.value,
            sens: merge(&self.sens, rhs.value, &rhs.sens, self.value),
        }
    }
}

/// IEEE semantics when the divisor is centered at zero; see [`lin_arith`]
/// for the checked form.
impl Div for &LinUncertain {
    type Output = LinUncertain;
    fn div(self, rhs: &LinUncertain) -> LinUncertain {
        let inv = 1.0 / rhs.value;
        LinUncertain {
            value: self.value * inv,
            sens: merge(&self.sens, inv, &rhs.sens, -self.value * inv * inv),
        }
    }
}

macro_rules! forward_owned {
    ($Op:ident, $op:ident) => {
        impl $Op for LinUncertain {
            type Output = LinUncertain;
            #[inline]
            fn $op(self, rhs: LinUncertain) -> LinUncertain {
                (&self).$op(&rhs)
            }
        }
        impl $Op<&LinUncertain> for LinUncertain {
            type Output = LinUncertain;
            #[inline]
            fn $op(self, rhs: &LinUncertain) -> LinUncertain {
                (&self).$op(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Add<f64> for LinUncertain {
    type Output = LinUncertain;
    fn add(mut self, rhs: f64) -> LinUncertain {
        self.value += rhs;
        self
    }
}

impl Sub<f64> for LinUncertain {
    type Output = LinUncertain;
    fn sub(mut self, rhs: f64) -> LinUncertain {
        self.value -= rhs;
        self
    }
}

impl Mul<f64> for LinUncertain {
    type Output = LinUncertain;
    fn mul(self, rhs: f64) -> LinUncertain {
        LinUncertain {
            value: self.value * rhs,
            sens: self.scaled(rhs),
        }
    }
}

impl Div<f64> for LinUncertain {
    type Output = LinUncertain;
    fn div(self, rhs: f64) -> LinUncertain {
        let inv = 1.0 / rhs;
        LinUncertain {
            value: self.value / rhs,
            sens: self.scaled(inv),
        }
    }
}

impl Mul<LinUncertain> for f64 {
    type Output = LinUncertain;
    fn mul(self, rhs: LinUncertain) -> LinUncertain {
        rhs * self
    }
}

impl Add<LinUncertain> for f64 {
    type Output = LinUncertain;
    fn add(self, rhs: LinUncertain) -> LinUncertain {
        rhs + self
    }
}

impl Sub<LinUncertain> for f64 {
    type Output = LinUncertain;
    fn sub(self, rhs: LinUncertain) -> LinUncertain {
        -rhs + self
    }
}

impl Neg for LinUncertain {
    type Output = LinUncertain;
    fn neg(mut self) -> LinUncertain {
        self.value = -self.value;
        for (_, d) in self.sens.iter_mut() {
            *d = -*d;
        }
        self
    }
}

impl Number for LinUncertain {
    fn sin(&self) -> Self {
        LinUncertain::sin(self)
    }
    fn cos(&self) -> Self {
        LinUncertain::cos(self)
    }
    fn all_finite(&self) -> bool {
        self.value.is_finite() && self.sens.iter().all(|(_, d)| d.is_finite())
    }
}

impl From<f64> for LinUncertain {
    fn from(x: f64) -> Self {
        Self::constant(x)
    }
}

impl fmt::Display for LinUncertain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = round_sig(self.value, 4);
        let s = round_sig(self.std(), 3);
        if s == 0.0 {
            write!(f, "{v:?}")
        } else {
            write!(f, "{v:?} ± {s:?}")
        }
    }
}

impl fmt::Debug for LinUncertain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
