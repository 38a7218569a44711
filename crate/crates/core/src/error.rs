use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument must be positive, got {0}")]
    NonPositive(String),
    #[error("invalid knot configuration n={n}, nu={nu}: {reason}")]
    InvalidConfig { n: i64, nu: i64, reason: &'static str },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("matrix is singular")]
    Singular,
    #[error("fraction-free elimination produced a non-exact division")]
    InexactElimination,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
