use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot construct particles from an empty sample vector")]
    Empty,

    #[error("sample count mismatch: {left} vs {right}")]
    CountMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "uncertain comparison: relation holds for {holds:.1}% of samples and fails for {fails:.1}%; \
         register the branching function with lift_unary/lift_nary or use ComparisonPolicy::ByMean"
    )]
    UncertainComparison { holds: f64, fails: f64 },

    #[error(
        "comparison of particles is forbidden by the active policy; \
         lift the branching function with lift_unary/lift_nary instead"
    )]
    ComparisonForbidden,

    #[error("comparison policy default was already set")]
    PolicyAlreadySet,

    #[error("quantile function returned non-finite value at u = {0}")]
    NonFiniteQuantile(f64),

    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),

    #[error("non-finite state at t = {0}")]
    NonFiniteState(f64),

    #[error("non-finite objective at {0:?}")]
    NonFiniteObjective([f64; 2]),

    #[error("no feasible point found from {0:?}; start from a point satisfying the worst-case constraint")]
    Infeasible([f64; 2]),

    #[error("io: {0}")]
    Io(String),

    #[error("parse: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
