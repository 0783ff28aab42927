use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter is outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction would exceed a configured size cap.
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap { what: &'static str, size: String, cap: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    /// An exact division left a remainder.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// Two internal routes for the same quantity disagreed.
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}
