use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("infeasible system: {0}")]
    Infeasible(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("invalid operator spec: {0}")]
    InvalidSpec(String),
    #[error("{count} solutions exceed the enumeration cap of {cap}")]
    TooManySolutions { count: u128, cap: u128 },
    #[error("{0}")]
    SizeLimit(String),
    #[error("synthesized circuit failed verification: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
