use thiserror::Error;

/// Errors raised by the library.
///
/// `Precondition` carries the name of the hypothesis that failed so front ends
/// can report it verbatim (for example "requires L_A = Z^n").
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed ({hypothesis}): {detail}")]
    Precondition { hypothesis: String, detail: String },
    #[error("{field}: {message}")]
    Input { field: String, message: String },
    #[error("cannot enumerate zeros: {0}")]
    Unsolvable(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(hypothesis: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precondition {
            hypothesis: hypothesis.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
