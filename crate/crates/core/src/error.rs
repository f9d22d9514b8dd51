use thiserror::Error;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular matrix of size {size} (rank {rank})")]
    Singular { size: usize, rank: usize },

    /// A validity gate failed; `tensor` names the defect and `index` is the
    /// first nonzero entry (1-based, as printed).
    #[error("{tensor} is nonzero at {index:?}: {value}")]
    Validation {
        tensor: String,
        index: Vec<usize>,
        value: String,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CoreError::InvalidInput(msg.into())
    }
}
