use thiserror::Error;

/// Exit codes: 1 verification failure, 2 usage or config, 3 internal.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("input document does not match the schema: {0}")]
    Schema(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Schema(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

macro_rules! internal {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Internal(e.to_string())
            }
        }
    )*};
}

internal!(
    fgl_engine::FglError,
    hopf_cobar::CobarError,
    bockstein_engine::BocksteinError,
    module_analysis::ModuleError,
    serde_json::Error
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
