use thiserror::Error;

use crate::curve::ValidationReport;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CurveError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("curve must contain at least {required} points, got {actual}")]
    TooFewPoints { required: usize, actual: usize },

    #[error("tenors must be strictly increasing and positive (offending position {index})")]
    TenorOrder { index: usize },

    #[error("rate {value} at position {index} is outside the admissible range (-0.5, 1.0)")]
    RateOutOfRange { index: usize, value: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid discount factor {value} at n = {index}")]
    InvalidDiscount { index: usize, value: f64 },

    #[error("index {index} is outside the curve grid 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("legs must be strictly increasing: {0}")]
    LegOrder(String),

    #[error("non-positive butterfly weight: {0:?}")]
    NonPositiveWeight([f64; 3]),

    #[error("horizon {horizon} outside admissible range [0, {limit}]")]
    Horizon { horizon: f64, limit: f64 },

    #[error("curve failed no-arbitrage validation ({} violation(s))", .0.violations.len())]
    Validation(ValidationReport),

    #[error("{points} points exceeds the all-triples cap of {cap}; pass an explicit override")]
    ScanTooLarge { points: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, CurveError>;
