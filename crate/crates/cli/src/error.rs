use plie_core::CoreError;
use thiserror::Error;

use crate::report::Witness;

/// Everything that makes an input unusable. All of these exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("validation error: {} is {} at ({}), expected {}", .0.label, .0.lhs, join(&.0.index), .0.rhs)]
    Validation(Witness),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Core(CoreError),
}

fn join(ix: &[usize]) -> String {
    ix.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

impl CliError {
    pub fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::Validation { tensor, index, value } => CliError::Validation(Witness {
                label: tensor,
                index,
                lhs: value,
                rhs: "0".into(),
            }),
            other => CliError::Core(other),
        }
    }
}
