use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    /// Malformed object, e.g. tree edges that do not form a tree.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An `ElementSpec` breaks its own invariants.
    #[error("invalid element spec: {0}")]
    Spec(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Computed bounds contradict each other.
    #[error("internal inconsistency: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: v, bound: n })
    }
}
