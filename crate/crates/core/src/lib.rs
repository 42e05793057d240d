//! Monte-Carlo uncertainty propagation with particles.
//!
//! An uncertain scalar is a [`Particles`] value: `N` unweighted samples that
//! behave like an ordinary number under arithmetic and elementary functions.
//! Operations act sample by sample, so sample `i` of every result derives from
//! sample `i` of every input. Dependencies between values are therefore kept
//! for free, `x - x` is exactly zero, and any model written against the
//! [`Number`] trait runs unchanged on `f64`, on particles, or on the
//! first-order [`LinUncertain`] baseline.
//!
//! ```
//! use mcprop::{sampling, Particles};
//!
//! let mut rng = sampling::seeded_rng(0);
//! let x: Particles = sampling::pm(1.0, 0.1, 500, &mut rng);
//! let y = (&x * &x).sin() - &x;
//! assert_eq!(y.len(), 500);
//! assert_eq!((&x - &x).std(), 0.0);
//! ```

pub mod bench;
pub mod cli;
pub mod demo;
pub mod error;
pub mod fastmath;
pub mod io;
pub mod linalg;
pub mod linear;
pub mod number;
pub mod ode;
pub mod particles;
pub mod pendulum;
pub mod robust;
pub mod sampling;
pub mod static_particles;

pub use error::{Error, Result};
pub use linear::{lin_arith, lin_cov, LinFn, LinOp, LinUncertain, SourceId};
pub use number::{Number, Single};
pub use particles::{
    cov, kde, lift_nary, lift_unary, BinaryOp, ComparisonPolicy, Operand, Particles, Relation,
    UnaryFn,
};
pub use sampling::{PlusMinus, ScalarDistribution};
pub use static_particles::StaticParticles;
