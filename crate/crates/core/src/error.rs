use thiserror::Error;

pub type Result<T> = std::result::Result<T, VibronError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VibronError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parity projection of the coherent state at r = {r} is the null vector")]
    NullProjection { r: f64 },

    #[error("tridiagonal eigensolver did not converge ({context})")]
    NoConvergence { context: String },

    #[error("minimizer failed: {0}")]
    Minimizer(String),
}

impl VibronError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        VibronError::Domain(msg.into())
    }
}
