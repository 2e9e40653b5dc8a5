use thiserror::Error;

/// Errors produced by the exact kernels and the pipelines built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series is not locally invertible (vanishing linear coefficient)")]
    NotInvertible,

    #[error("coefficient of order {requested} requested but the series is only valid below order {valid}")]
    Truncated { requested: i64, valid: i64 },

    #[error("truncation order too low: {what} needs local order at least {needed}")]
    OrderTooLow { what: String, needed: i64 },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("size mismatch: |lambda| = {left}, |mu| = {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid knot T[{q},{p}]: {reason}")]
    InvalidKnot { q: i64, p: i64, reason: String },

    #[error("degenerate curve parameter: {0}")]
    DegenerateCurve(String),

    #[error("point lies on a ring boundary |z| = {0}")]
    RingBoundary(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
