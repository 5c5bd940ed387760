use thiserror::Error;

use crate::geometry::Ray;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("dimension {dim} exceeds the configured cap {cap} (raise it with VALLAB_DIM_CAP; ray enumeration cost grows combinatorially)")]
    DimensionCap { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),

    #[error("numerator A + v(q) + lambda*v(q') is not positive at ray {ray} (value {numerator}); lambda must exceed {bound}")]
    NegativityViolation {
        ray: Ray,
        numerator: String,
        bound: String,
    },

    #[error("the weight vector does not attain the jumping number (ratio {ratio}, minimum {minimum})")]
    NotAMinimizer { ratio: String, minimum: String },

    #[error("the jumping number is infinite")]
    InfiniteLct,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("minimizing rays not proportional to the weight vector: {}", fmt_rays(.rays))]
    NonUniqueMinimizer { rays: Vec<Ray> },

    #[error("normalization failed: sum of alpha_i * k_i is {sum}, expected 1")]
    Normalization { sum: String },

    #[error("{what} = {value} is outside [{low}, {high}]")]
    OutOfRange {
        what: &'static str,
        value: String,
        low: String,
        high: String,
    },

    #[error("invalid approximation sequence: {0}")]
    InvalidSequence(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

fn fmt_rays(rays: &[Ray]) -> String {
    rays.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
