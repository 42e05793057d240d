//! The numeric interface generic model code is written against.
//!
//! `f64`, [`Single`], [`Particles`], [`StaticParticles`] and [`LinUncertain`]
//! all implement [`Number`], so one function body serves plain simulation,
//! Monte-Carlo propagation and linear propagation alike.
//!
//! [`Particles`]: crate::Particles
//! [`StaticParticles`]: crate::StaticParticles
//! [`LinUncertain`]: crate::LinUncertain

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::fastmath;

pub trait Number:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    /// False if any component (sample, value or sensitivity) is NaN or infinite.
    fn all_finite(&self) -> bool;

    /// `k·h + self`. Overrides must round exactly like this operator form.
    #[inline]
    fn add_scaled(&self, k: &Self, h: f64) -> Self {
        k.clone() * h + self
    }

    /// The RK4 update `(a + 2b + 2c + d)·w + self`, evaluated left to right.
    /// Overrides must round exactly like this operator form.
    #[inline]
    fn rk4_update(&self, a: Self, b: Self, c: Self, d: Self, w: f64) -> Self {
        (a + b * 2.0 + c * 2.0 + d) * w + self
    }
}

/// Plain `f64` uses the same sine/cosine kernel as [`crate::Particles`], so a
/// loop of scalar evaluations reproduces a batched evaluation bit for bit.
impl Number for f64 {
    #[inline]
    fn sin(&self) -> Self {
        fastmath::sin(*self)
    }
    #[inline]
    fn cos(&self) -> Self {
        fastmath::cos(*self)
    }
    #[inline]
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

/// Single-precision scalar. Constants given as `f64` are rounded to `f32`
/// before use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Single(pub f32);

macro_rules! single_ops {
    ($Op:ident, $op:ident, $sym:tt) => {
        impl $Op for Single {
            type Output = Single;
            #[inline]
            fn $op(self, rhs: Single) -> Single {
                Single(self.0 $sym rhs.0)
            }
        }
        impl $Op<&Single> for Single {
            type Output = Single;
            #[inline]
            fn $op(self, rhs: &Single) -> Single {
                Single(self.0 $sym rhs.0)
            }
        }
        impl $Op<f64> for Single {
            type Output = Single;
            #[inline]
            fn $op(self, rhs: f64) -> Single {
                Single(self.0 $sym rhs as f32)
            }
        }
    };
}

single_ops!(Add, add, +);
single_ops!(Sub, sub, -);
single_ops!(Mul, mul, *);
single_ops!(Div, div, /);

impl Neg for Single {
    type Output = Single;
    #[inline]
    fn neg(self) -> Single {
        Single(-self.0)
    }
}

impl Number for Single {
    #[inline]
    fn sin(&self) -> Self {
        Single(self.0.sin())
    }
    #[inline]
    fn cos(&self) -> Self {
        Single(self.0.cos())
    }
    #[inline]
    fn all_finite(&self) -> bool {
        self.0.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly<N: Number>(x: N) -> N {
        x.clone() * x.clone() * 3.0 - x.sin() + 1.0
    }

    #[test]
    fn generic_code_runs_on_scalars() {
        let d = poly(0.5f64);
        let s = poly(Single(0.5));
        assert!((d - s.0 as f64).abs() < 1e-6);
        assert_eq!(d, 0.75 - fastmath::sin(0.5) + 1.0);
    }

    #[test]
    fn single_rounds_constants() {
        let x = Single(1.0) + 1e-10;
        assert_eq!(x.0, 1.0);
        assert!(!Single(f32::NAN).all_finite());
    }
}
