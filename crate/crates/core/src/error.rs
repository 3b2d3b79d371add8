use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped so that a front end can map them onto exit
/// codes: [`Error::PromiseViolation`] means the input did not satisfy the
/// separability promise, [`Error::LimitExceeded`] means a configured budget
/// was hit, and everything else is a malformed input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid alpha vector: {0}")]
    InvalidAlpha(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("promise violation: {0}")]
    PromiseViolation(String),

    #[error("{what} limit exceeded: {actual} > {limit}")]
    LimitExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("multiple cuts realise the same alpha vector {0:?}")]
    NotUnique(Vec<usize>),
}

impl Error {
    pub(crate) fn promise(msg: impl Into<String>) -> Self {
        Error::PromiseViolation(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors that signal a broken separability promise rather
    /// than malformed input.
    pub fn is_promise_violation(&self) -> bool {
        matches!(self, Error::PromiseViolation(_) | Error::NotUnique(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
