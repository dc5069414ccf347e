use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation degree k = {k} exceeds n = {n}")]
    DegreeTooLarge { k: u64, n: u64 },

    #[error("n must be at least 1")]
    ZeroPower,

    #[error("k = {k} exceeds n/2 for n = {n}")]
    PartialSumRange { k: u64, n: u64 },

    #[error("exhaustive enumeration limited to n <= {limit}, got n = {n}")]
    EnumerationTooLarge { n: u64, limit: u64 },

    #[error("exact path limited to n <= {limit}, got n = {n}")]
    ExactLimitExceeded { n: u64, limit: u64 },

    #[error("tolerance must lie in (0, 1], got {0}")]
    InvalidTolerance(f64),

    #[error("series degree {degree} exceeds the power-basis limit {limit}")]
    PowerBasisTooLarge { degree: usize, limit: usize },

    #[error("grid size must be at least {min}, got {got}")]
    GridTooSmall { got: usize, min: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("matrix must have positive dimension")]
    EmptyMatrix,
}
