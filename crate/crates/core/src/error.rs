use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular block: zero pivot at diagonal entry {index}")]
    Singular { index: usize },

    #[error("alpha vanishes at k = {k}")]
    ZeroAlpha { k: u64 },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("cannot evaluate scheme at k = {k}: {message}")]
    SchemeEval { k: u64, message: String },

    #[error("pole: {0}")]
    Pole(String),

    #[error("not in catalog: {0}")]
    NotInCatalog(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
