use thiserror::Error;

/// Errors raised by the library. Each variant names the violated invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input value violates a type invariant (normalization, unitarity, range).
    #[error("validation error: {0}")]
    Validation(String),

    /// Operation precondition does not hold for otherwise valid inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Input is valid but outside what the operation supports.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// The two observables share an eigenstate (largest overlap is 1).
    #[error("observables share an eigenstate: max |<a_i|b_j>| = {overlap}")]
    SharedEigenstate { overlap: f64 },

    /// Arithmetic on extended reals with no defined value (e.g. inf - inf).
    #[error("undefined extended-real arithmetic: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
