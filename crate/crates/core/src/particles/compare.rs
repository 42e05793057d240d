//! Comparisons of uncertain values.
//!
//! A branch such as `if x > 0.0 { .. }` has no single answer when some samples
//! of `x` are positive and some are not. The policy decides what to do about
//! it; the default refuses to guess.

use std::sync::OnceLock;

use super::functions::Operand;
use super::Particles;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComparisonPolicy {
    /// The relation must hold at every sample or at none.
    #[default]
    Unanimous,
    /// Compare the means.
    ByMean,
    /// Every comparison is an error.
    Forbidden,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Relation {
    #[inline]
    pub fn holds(self, a: f64, b: f64) -> bool {
        match self {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Gt => a > b,
            Relation::Ge => a >= b,
            Relation::Eq => a == b,
        }
    }
}

static DEFAULT_POLICY: OnceLock<ComparisonPolicy> = OnceLock::new();

/// Sets the process-wide default policy. Succeeds once.
pub fn set_default_policy(policy: ComparisonPolicy) -> Result<()> {
    DEFAULT_POLICY
        .set(policy)
        .map_err(|_| Error::PolicyAlreadySet)
}

pub fn default_policy() -> ComparisonPolicy {
    DEFAULT_POLICY.get().copied().unwrap_or_default()
}

impl Particles {
    pub fn compare<'a>(
        &self,
        rhs: impl Into<Operand<'a>>,
        relation: Relation,
        policy: ComparisonPolicy,
    ) -> Result<bool> {
        let rhs = rhs.into();
        match policy {
            ComparisonPolicy::Forbidden => Err(Error::ComparisonForbidden),
            ComparisonPolicy::ByMean => Ok(relation.holds(self.mean(), rhs.mean())),
            ComparisonPolicy::Unanimous => {
                if let Some(m) = rhs.count() {
                    if m != self.len() {
                        return Err(Error::CountMismatch {
                            left: self.len(),
                            right: m,
                        });
                    }
                }
                let n = self.len();
                let hits = (0..n)
                    .filter(|&i| relation.holds(self.samples[i], rhs.at(i)))
                    .count();
                if hits == n {
                    Ok(true)
                } else if hits == 0 {
                    Ok(false)
                } else {
                    let holds = 100.0 * hits as f64 / n as f64;
                    Err(Error::UncertainComparison {
                        holds,
                        fails: 100.0 - holds,
                    })
                }
            }
        }
    }

    pub fn gt<'a>(&self, rhs: impl Into<Operand<'a>>) -> Result<bool> {
        self.compare(rhs, Relation::Gt, default_policy())
    }

    pub fn ge<'a>(&self, rhs: impl Into<Operand<'a>>) -> Result<bool> {
        self.compare(rhs, Relation::Ge, default_policy())
    }

    pub fn lt<'a>(&self, rhs: impl Into<Operand<'a>>) -> Result<bool> {
        self.compare(rhs, Relation::Lt, default_policy())
    }

    pub fn le<'a>(&self, rhs: impl Into<Operand<'a>>) -> Result<bool> {
        self.compare(rhs, Relation::Le, default_policy())
    }
}
