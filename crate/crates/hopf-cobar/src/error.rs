use ehh2_core::{FieldError, RingError};
use fgl_engine::FglError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CobarError {
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("generator bound {have} is too small: this window needs t_2..t_{} (bound {required})", 2 * required)]
    InsufficientBound { required: usize, have: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("could not decide whether a class survives in bidegree s = {0}: {1}")]
    Unresolved(usize, String),
}
