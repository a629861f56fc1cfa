use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("module contract violated: {0}")]
    Contract(String),
    #[error("window covers internal degrees [{have_min}, {have_max}] but the search probes [{need_min}, {need_max}]")]
    InsufficientWindow { need_min: i64, need_max: i64, have_min: i64, have_max: i64 },
    #[error(transparent)]
    Bockstein(#[from] bockstein_engine::BocksteinError),
}
