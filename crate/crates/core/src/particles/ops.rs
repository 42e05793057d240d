// the operator arrives as a macro token, so `a = a op b` is the only spelling
#![allow(clippy::assign_op_pattern)]

use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use super::Particles;

#[inline]
pub(crate) fn assert_same_len(a: &Particles, b: &Particles) {
    assert!(
        a.len() == b.len(),
        "sample count mismatch: {} vs {}",
        a.len(),
        b.len()
    );
}

// Owned operands are reused as the output buffer, so a chain of operations on
// temporaries allocates once.
macro_rules! impl_binop {
    ($Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident, $sym:tt) => {
        impl $Op<Particles> for Particles {
            type Output = Particles;
            #[inline]
            fn $op(mut self, rhs: Particles) -> Particles {
                assert_same_len(&self, &rhs);
                for (a, b) in self.samples.iter_mut().zip(rhs.samples.iter()) {
                    *a = *a $sym *b;
                }
                self
            }
        }

        impl $Op<&Particles> for Particles {
            type Output = Particles;
            #[inline]
            fn $op(mut self, rhs: &Particles) -> Particles {
                assert_same_len(&self, rhs);
                for (a, b) in self.samples.iter_mut().zip(rhs.samples.iter()) {
                    *a = *a $sym *b;
                }
                self
            }
        }

        impl $Op<Particles> for &Particles {
            type Output = Particles;
            #[inline]
            fn $op(self, mut rhs: Particles) -> Particles {
                assert_same_len(self, &rhs);
                for (b, a) in rhs.samples.iter_mut().zip(self.samples.iter()) {
                    *b = *a $sym *b;
                }
                rhs
            }
        }

        impl $Op<&Particles> for &Particles {
            type Output = Particles;
            #[inline]
            fn $op(self, rhs: &Particles) -> Particles {
                assert_same_len(self, rhs);
                let samples = self
                    .samples
                    .iter()
                    .zip(rhs.samples.iter())
                    .map(|(a, b)| *a $sym *b)
                    .collect();
                Particles::from_vec_unchecked(samples)
            }
        }

        impl $Op<f64> for Particles {
            type Output = Particles;
            #[inline]
            fn $op(mut self, rhs: f64) -> Particles {
                for a in self.samples.iter_mut() {
                    *a = *a $sym rhs;
                }
                self
            }
        }

        impl $Op<f64> for &Particles {
            type Output = Particles;
            #[inline]
            fn $op(self, rhs: f64) -> Particles {
                Particles::from_vec_unchecked(self.samples.iter().map(|a| *a $sym rhs).collect())
            }
        }

        impl $Op<Particles> for f64 {
            type Output = Particles;
            #[inline]
            fn $op(self, mut rhs: Particles) -> Particles {
                for b in rhs.samples.iter_mut() {
                    *b = self $sym *b;
                }
                rhs
            }
        }

        impl $Op<&Particles> for f64 {
            type Output = Particles;
            #[inline]
            fn $op(self, rhs: &Particles) -> Particles {
                Particles::from_vec_unchecked(rhs.samples.iter().map(|b| self $sym *b).collect())
            }
        }

        impl $OpAssign<&Particles> for Particles {
            #[inline]
            fn $op_assign(&mut self, rhs: &Particles) {
                assert_same_len(self, rhs);
                for (a, b) in self.samples.iter_mut().zip(rhs.samples.iter()) {
                    *a = *a $sym *b;
                }
            }
        }

        impl $OpAssign<Particles> for Particles {
            #[inline]
            fn $op_assign(&mut self, rhs: Particles) {
                self.$op_assign(&rhs);
            }
        }

        impl $OpAssign<f64> for Particles {
            #[inline]
            fn $op_assign(&mut self, rhs: f64) {
                for a in self.samples.iter_mut() {
                    *a = *a $sym rhs;
                }
            }
        }
    };
}

impl_binop!(Add, add, AddAssign, add_assign, +);
impl_binop!(Sub, sub, SubAssign, sub_assign, -);
impl_binop!(Mul, mul, MulAssign, mul_assign, *);
impl_binop!(Div, div, DivAssign, div_assign, /);

impl Neg for Particles {
    type Output = Particles;
    #[inline]
    fn neg(mut self) -> Particles {
        for a in self.samples.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Neg for &Particles {
    type Output = Particles;
    #[inline]
    fn neg(self) -> Particles {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[f64]) -> Particles {
        Particles::from_samples(v.to_vec()).unwrap()
    }

    #[test]
    fn elementwise() {
        let a = p(&[1.0, 2.0]);
        let b = p(&[10.0, 20.0]);
        assert_eq!((&a + &b).samples(), &[11.0, 22.0]);
        assert_eq!((&b - &a).samples(), &[9.0, 18.0]);
        assert_eq!((&a * &b).samples(), &[10.0, 40.0]);
        assert_eq!((&b / &a).samples(), &[10.0, 10.0]);
        assert_eq!((a.clone() - b.clone()).samples(), &[-9.0, -18.0]);
        assert_eq!((&a - b.clone()).samples(), &[-9.0, -18.0]);
        assert_eq!((a.clone() - &b).samples(), &[-9.0, -18.0]);
    }

    #[test]
    fn scalars_broadcast() {
        let a = p(&[1.0, 2.0]);
        assert_eq!((&a + 1.0).samples(), &[2.0, 3.0]);
        assert_eq!((1.0 - &a).samples(), &[0.0, -1.0]);
        assert_eq!((2.0 / a.clone()).samples(), &[2.0, 1.0]);
        assert_eq!((a.clone() * 3.0).samples(), &[3.0, 6.0]);
        assert_eq!(&a + 4.0, &a + &Particles::constant(4.0, 2));
    }

    #[test]
    fn self_difference_is_zero() {
        let a = p(&[0.3, -1.7, 2.9]);
        assert!((&a - &a).samples().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn assign_ops() {
        let mut a = p(&[1.0, 2.0]);
        a += &p(&[1.0, 1.0]);
        a *= 2.0;
        a -= 1.0;
        a /= p(&[3.0, 5.0]);
        assert_eq!(a.samples(), &[1.0, 1.0]);
        assert_eq!((-a).samples(), &[-1.0, -1.0]);
    }

    #[test]
    fn division_by_zero_sample_is_preserved() {
        let a = p(&[1.0, 1.0]);
        let b = p(&[0.0, 2.0]);
        let q = &a / &b;
        assert!(q.samples()[0].is_infinite());
        assert_eq!(q.samples()[1], 0.5);
    }

    #[test]
    #[should_panic(expected = "sample count mismatch")]
    fn mismatch_panics() {
        let _ = p(&[1.0]) + p(&[1.0, 2.0]);
    }
}
