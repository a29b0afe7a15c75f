use thiserror::Error;

/// Parse failure in the polynomial text grammar, with source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, col {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("jet order mismatch: {0}")]
    OrderMismatch(String),

    #[error("ambient label mismatch: `{0}` vs `{1}`")]
    AmbientMismatch(String, String),

    #[error("nonzero constant term: {0}")]
    NonzeroConstant(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("no closed-form basis for {0}; use the generic kernel")]
    UnsupportedClosedForm(String),

    #[error("{0} is not a subgroup of {1}")]
    NotASubgroup(String, String),

    #[error("jet order too small: need at least {needed}, have {have}")]
    OrderTooSmall { needed: u32, have: u32 },

    #[error("degenerate germ: {0}")]
    DegenerateGerm(String),

    /// An invariant the library itself guarantees was violated.
    /// Reaching this variant is a bug, not a user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
