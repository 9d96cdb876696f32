use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),

    /// The stacked matrix `[G; H]` (or `[A; B]`) is numerically rank deficient.
    #[error("degenerate matrix pair: smallest singular value {smallest:e} of the stacked matrix vs largest {largest:e}")]
    DegeneratePair { smallest: f64, largest: f64 },

    /// `Ax` and `Bx` vanish together, so the pair is not regular on the start vector.
    #[error("regularity violation: A·x and B·x are both zero")]
    RegularityViolation,

    #[error("problem too large for the dense oracle: n = {n} exceeds {limit}")]
    TooLarge { n: usize, limit: usize },

    /// Malformed Matrix Market text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: &'static str },

    #[error("search subspace cannot be extended: {0}")]
    SubspaceExhausted(&'static str),
}
