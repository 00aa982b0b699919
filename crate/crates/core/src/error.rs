use thiserror::Error;

/// Errors raised by constructions and solvers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A multiplication table, action table or cocycle failed an axiom.
    /// The witness names the offending tuple of indices.
    #[error("validation failed: {what} at {witness:?}")]
    Validation { what: String, witness: Vec<usize> },

    /// Arguments that are well formed but not usable together.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("size cap exceeded: {what} = {size} > {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },

    /// A product could not be expanded in the supplied basis.
    #[error("not in basis span: {0}")]
    NotInSpan(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(what: impl Into<String>, witness: Vec<usize>) -> Self {
        Error::Validation { what: what.into(), witness }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
