//! Registering scalar functions as particle primitives.
//!
//! A lifted function sees one sample at a time as a plain `f64`, so it may
//! branch on its argument freely.

use super::functions::{common_count, Operand};
use super::Particles;
use crate::error::Result;

impl Particles {
    /// Applies `f` to every sample independently.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Particles {
        Particles::from_vec_unchecked(self.samples.iter().map(|&x| f(x)).collect())
    }

    /// Like [`Particles::map`], split across `threads` scoped threads.
    /// The result is identical to the sequential one.
    pub fn map_parallel(&self, f: impl Fn(f64) -> f64 + Sync, threads: usize) -> Particles {
        let threads = threads.clamp(1, self.len());
        if threads == 1 {
            return self.map(f);
        }
        let mut out = self.samples.clone();
        let chunk = out.len().div_ceil(threads);
        let f = &f;
        std::thread::scope(|s| {
            for part in out.chunks_mut(chunk) {
                s.spawn(move || part.iter_mut().for_each(|x| *x = f(*x)));
            }
        });
        Particles::from_vec_unchecked(out)
    }
}

/// Turns a scalar function into a function over particles.
pub fn lift_unary<F>(f: F) -> impl Fn(&Particles) -> Particles
where
    F: Fn(f64) -> f64,
{
    move |p| p.map(&f)
}

/// Turns a `k`-argument scalar function into a function over particles and
/// scalars. At least one argument must be particles; all particle arguments
/// must share a sample count.
pub fn lift_nary<F>(f: F) -> impl Fn(&[Operand<'_>]) -> Result<Particles>
where
    F: Fn(&[f64]) -> f64,
{
    move |args| {
        let n = common_count(args)?;
        let mut buf = vec![0.0; args.len()];
        let out = (0..n)
            .map(|i| {
                for (slot, a) in buf.iter_mut().zip(args) {
                    *slot = a.at(i);
                }
                f(&buf)
            })
            .collect();
        Ok(Particles::from_vec_unchecked(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::particles::BinaryOp;
    use crate::sampling::{pm, seeded_rng};

    fn negsquare(x: f64) -> f64 {
        if x > 0.0 {
            x * x
        } else {
            -x * x
        }
    }

    #[test]
    fn negsquare_keeps_sign_pattern() {
        let mut rng = seeded_rng(3);
        let p = pm(0.0, 1.0, 500, &mut rng);
        let y = lift_unary(negsquare)(&p);
        for (x, v) in p.samples().iter().zip(y.samples()) {
            assert_eq!(x.is_sign_negative() && *x != 0.0, *v < 0.0);
        }
        assert!(y.median().abs() < 1e-9);
    }

    #[test]
    fn identity_and_square() {
        let p = Particles::from_samples(vec![-1.5, 0.2, 3.0]).unwrap();
        assert_eq!(lift_unary(|x| x)(&p), p);
        assert_eq!(lift_unary(|x| x * x)(&p), &p * &p);
    }

    #[test]
    fn nary_matches_binary_ops() {
        let a = Particles::from_samples(vec![1.0, -2.0, 5.0]).unwrap();
        let b = Particles::from_samples(vec![0.5, 3.0, 5.0]).unwrap();
        let add = lift_nary(|v| v[0] + v[1]);
        assert_eq!(add(&[(&a).into(), (&b).into()]).unwrap(), &a + &b);
        let branchy_max = lift_nary(|v| if v[0] > v[1] { v[0] } else { v[1] });
        assert_eq!(
            branchy_max(&[(&a).into(), (&b).into()]).unwrap(),
            Particles::binary_op(BinaryOp::Max, &a, &b).unwrap()
        );
        let with_scalar = lift_nary(|v| v[0] * v[1]);
        assert_eq!(with_scalar(&[(&a).into(), 2.0.into()]).unwrap(), &a * 2.0);
    }

    #[test]
    fn nary_requires_particles() {
        let f = lift_nary(|v| v[0]);
        assert!(matches!(f(&[1.0.into()]), Err(Error::Domain(_))));
        let a = Particles::constant(1.0, 2);
        let b = Particles::constant(1.0, 3);
        assert!(matches!(
            f(&[(&a).into(), (&b).into()]),
            Err(Error::CountMismatch { .. })
        ));
    }

    #[test]
    fn parallel_map_is_identical() {
        let mut rng = seeded_rng(9);
        let p = pm(1.0, 2.0, 101, &mut rng);
        assert_eq!(p.map_parallel(negsquare, 4), p.map(negsquare));
    }
}
