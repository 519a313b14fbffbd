use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; syntax
/// problems in documents are reported by [`crate::cli::CliError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0} is not a unit")]
    NonUnit(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("d2-nonzero at degree {0}")]
    D2Nonzero(i64),

    #[error("rejected by sigma: {0}")]
    SigmaRejected(String),

    #[error("expected length {expected}, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("sigma mismatch")]
    SigmaMismatch,

    #[error("not a chain map at degree {0}")]
    NotChainMap(i64),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid { what, detail: detail.into() }
    }

    /// Short machine-readable tag, used in CLI error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch(..) => "ring-mismatch",
            Error::Shape(_) => "shape",
            Error::NonUnit(_) => "non-unit",
            Error::NoSolution => "no-solution",
            Error::Singular(_) => "singular",
            Error::Unsupported(_) => "unsupported",
            Error::Invalid { .. } => "invalid",
            Error::D2Nonzero(_) => "d2-nonzero",
            Error::SigmaRejected(_) => "sigma-rejected",
            Error::Length { .. } => "length",
            Error::BoundExceeded(_) => "bound-exceeded",
            Error::SigmaMismatch => "sigma-mismatch",
            Error::NotChainMap(_) => "not-chain-map",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
