//! Fixed-size particles stored inline.
//!
//! Same contracts as [`Particles`], with the count fixed by the type. Values
//! are `Copy` and never touch the heap, which pays off for small `N`.

#![allow(clippy::assign_op_pattern)]

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fastmath;
use crate::number::Number;
use crate::particles::{round_sig, Particles};
use crate::sampling;

#[derive(Clone, Copy, PartialEq)]
pub struct StaticParticles<const N: usize = 100> {
    samples: [f64; N],
}

impl<const N: usize> StaticParticles<N> {
    const NONZERO: () = assert!(N >= 1, "particle count must be at least 1");

    pub fn from_array(samples: [f64; N]) -> Self {
        let () = Self::NONZERO;
        Self { samples }
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let samples: [f64; N] = values.try_into().map_err(|_| Error::CountMismatch {
            left: N,
            right: values.len(),
        })?;
        Ok(Self::from_array(samples))
    }

    pub fn constant(value: f64) -> Self {
        Self::from_array([value; N])
    }

    /// Gaussian particles built by systematic sampling.
    pub fn pm<R: Rng + ?Sized>(mu: f64, sigma: f64, rng: &mut R) -> Self {
        let p = sampling::pm(mu, sigma, N, rng);
        Self::from_slice(p.samples()).expect("count matches by construction")
    }

    pub fn samples(&self) -> &[f64; N] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        N
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / N as f64
    }

    pub fn var(&self) -> f64 {
        if N < 2 {
            return 0.0;
        }
        let m = self.mean();
        self.samples.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (N - 1) as f64
    }

    pub fn std(&self) -> f64 {
        self.var().sqrt()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut out = self.samples;
        out.iter_mut().for_each(|x| *x = f(*x));
        Self { samples: out }
    }

    pub fn sin(&self) -> Self {
        let mut out = self.samples;
        fastmath::sin_in_place(&mut out);
        Self { samples: out }
    }

    pub fn cos(&self) -> Self {
        let mut out = self.samples;
        fastmath::cos_in_place(&mut out);
        Self { samples: out }
    }

    pub fn exp(&self) -> Self {
        self.map(f64::exp)
    }

    pub fn ln(&self) -> Self {
        self.map(f64::ln)
    }

    pub fn sqrt(&self) -> Self {
        self.map(f64::sqrt)
    }

    pub fn to_particles(&self) -> Particles {
        Particles::from_vec_unchecked(self.samples.to_vec())
    }
}

impl<const N: usize> TryFrom<&Particles> for StaticParticles<N> {
    type Error = Error;

    fn try_from(p: &Particles) -> Result<Self> {
        Self::from_slice(p.samples())
    }
}

macro_rules! static_ops {
    ($Op:ident, $op:ident, $sym:tt) => {
        impl<const N: usize> $Op for StaticParticles<N> {
            type Output = Self;
            #[inline]
            fn $op(mut self, rhs: Self) -> Self {
                for (a, b) in self.samples.iter_mut().zip(rhs.samples.iter()) {
                    *a = *a $sym *b;
                }
                self
            }
        }
        impl<const N: usize> $Op<&StaticParticles<N>> for StaticParticles<N> {
            type Output = Self;
            #[inline]
            fn $op(self, rhs: &Self) -> Self {
                self.$op(*rhs)
            }
        }
        impl<const N: usize> $Op<f64> for StaticParticles<N> {
            type Output = Self;
            #[inline]
            fn $op(mut self, rhs: f64) -> Self {
                for a in self.samples.iter_mut() {
                    *a = *a $sym rhs;
                }
                self
            }
        }
        impl<const N: usize> $Op<StaticParticles<N>> for f64 {
            type Output = StaticParticles<N>;
            #[inline]
            fn $op(self, mut rhs: StaticParticles<N>) -> StaticParticles<N> {
                for b in rhs.samples.iter_mut() {
                    *b = self $sym *b;
                }
                rhs
            }
        }
    };
}

static_ops!(Add, add, +);
static_ops!(Sub, sub, -);
static_ops!(Mul, mul, *);
static_ops!(Div, div, /);

impl<const N: usize> Neg for StaticParticles<N> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<const N: usize> Number for StaticParticles<N> {
    fn sin(&self) -> Self {
        StaticParticles::sin(self)
    }
    fn cos(&self) -> Self {
        StaticParticles::cos(self)
    }
    fn all_finite(&self) -> bool {
        self.samples.iter().all(|x| x.is_finite())
    }
}

impl<const N: usize> fmt::Display for StaticParticles<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = round_sig(self.mean(), 4);
        let s = round_sig(self.std(), 3);
        if s == 0.0 {
            write!(f, "S{N}({m:?})")
        } else {
            write!(f, "S{N}({m:?} ± {s:?})")
        }
    }
}

impl<const N: usize> fmt::Debug for StaticParticles<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
