use ehh2_core::{FieldError, RingError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FglError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("coefficient {0} is not p-integral")]
    NonIntegral(String),
    #[error("insufficient degree cap: need {needed}, have {have}")]
    InsufficientCap { needed: i64, have: i64 },
    #[error("insufficient truncation: need N >= {needed}, have {have}")]
    InsufficientTruncation { needed: i64, have: i64 },
    #[error("formal sum needs terms of positive power-series valuation")]
    NotPositive,
    #[error("inconsistent solve: {0}")]
    Inconsistent(String),
    #[error("fixed point did not stabilize after {0} iterations")]
    NoFixedPoint(usize),
    #[error("bad parameter: {0}")]
    Parameter(String),
}
