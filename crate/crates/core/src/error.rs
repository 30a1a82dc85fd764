use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid bijection: {0}")]
    InvalidBijection(String),

    #[error("not a twisted derivation: {0}")]
    NotADerivation(String),

    #[error("operands belong to different extensions")]
    ContextMismatch,

    #[error("{0} is only defined for a zero derivation")]
    NonZeroDerivation(&'static str),

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("the index set must be non-empty")]
    EmptyIndexSet,

    #[error("schema violation: {0}")]
    Schema(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error envelopes.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::InvalidBijection(_) => "invalid_bijection",
            Error::NotADerivation(_) => "not_a_derivation",
            Error::ContextMismatch => "context_mismatch",
            Error::NonZeroDerivation(_) => "nonzero_derivation",
            Error::OrderMismatch(..) => "order_mismatch",
            Error::InvalidRational(_) => "invalid_rational",
            Error::EmptyIndexSet => "empty_index_set",
            Error::Schema(_) => "schema_violation",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
