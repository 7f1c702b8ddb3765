use thiserror::Error;

/// Errors raised by the arithmetic, oracle and series layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value cannot be represented in the requested form, e.g. a v-Laurent
    /// polynomial whose exponent differences are not multiples of four cannot
    /// become a q-series.
    #[error("representation error: {0}")]
    Representation(String),

    /// A comparison or extraction asked for more coefficients than are known.
    #[error("precision error: needed {needed} coefficients, only {available} known")]
    Precision { needed: usize, available: usize },

    /// A configured oracle limit would be exceeded.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// An exact division left a remainder, or two computations that must
    /// agree did not.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Malformed textual input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A name was looked up in a registry that does not contain it.
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn repr(msg: impl Into<String>) -> Self {
        Error::Representation(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
