use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: size {n} exceeds the supported limit {max}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("index {index} out of range for a ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relation is not reflexive-transitively closed: missing ({0},{1})")]
    NotClosed(usize, usize),
    #[error("ground-set sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("not a packed word: {0}")]
    NotPacked(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn size_limit(what: &'static str, n: usize, max: usize) -> Self {
        Error::SizeLimit { what, n, max }
    }

    pub(crate) fn check_limit(what: &'static str, n: usize, max: usize) -> Result<()> {
        if n > max {
            Err(Error::size_limit(what, n, max))
        } else {
            Ok(())
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
