use thiserror::Error;

/// Errors produced by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An order, degree or horizon exceeds what the requested operation supports.
    #[error("capacity exceeded: {what} is {value}, maximum supported is {max}")]
    Capacity {
        what: &'static str,
        value: usize,
        max: usize,
    },
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed textual input (graph6, sequences, ranges).
    #[error("parse error: {0}")]
    Parse(String),
    /// A sequence cannot be inverted under the Euler product.
    #[error("not an Euler transform of a nonnegative integer sequence: {0}")]
    NotEulerTransform(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn capacity(what: &'static str, value: usize, max: usize) -> Self {
        Error::Capacity { what, value, max }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 2,
            Error::Domain(_) | Error::NotEulerTransform(_) => 3,
            Error::Parse(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
