use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vector must have at least one entry")]
    EmptyVector,

    #[error("entry {index} is not finite")]
    NonFinite { index: usize },

    #[error("{what} is the zero vector; direction undefined")]
    ZeroVector { what: &'static str },

    #[error("{what} must have unit norm, got {norm}")]
    NotUnit { what: &'static str, norm: f64 },

    #[error("family is not orthonormal: <u{i}, u{j}> = {value} (|deviation| > {limit})")]
    NotOrthonormal {
        i: usize,
        j: usize,
        value: String,
        limit: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
