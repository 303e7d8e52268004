use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("ideal is not square-free: {0}")]
    NotSquarefree(String),

    #[error("unsupported symbolic power: {0}")]
    UnsupportedSymbolic(String),

    #[error("capability unavailable: {0}")]
    Capability(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exponent overflow while computing {0}")]
    Overflow(&'static str),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("veronese annotation failed verification: {0}")]
    VeroneseMismatch(String),

    #[error("parse error at position {position} near `{token}`: {message}")]
    Parse {
        token: String,
        position: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable kind tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AmbientMismatch { .. } => "ambient_mismatch",
            Error::NotSquarefree(_) => "not_squarefree",
            Error::UnsupportedSymbolic(_) => "unsupported_symbolic",
            Error::Capability(_) => "capability",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Overflow(_) => "overflow",
            Error::SizeGuard(_) => "size_guard",
            Error::VeroneseMismatch(_) => "veronese_mismatch",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
