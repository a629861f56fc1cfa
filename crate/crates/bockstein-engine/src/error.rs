use fgl_engine::FglError;
use hopf_cobar::CobarError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BocksteinError {
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Cobar(#[from] CobarError),
    #[error(transparent)]
    Ring(#[from] ehh2_core::RingError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("insufficient truncation: need N >= {needed}, have {have}")]
    InsufficientTruncation { needed: i64, have: i64 },
    #[error("leading term has the wrong shape: {0}")]
    Shape(String),
    #[error("structural inconsistency: {0}")]
    Structural(String),
}
