use thiserror::Error;

/// Two fitness vectors (or a vector and a reference point) disagree on the
/// number of objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("dimension mismatch: {left} objectives vs {right}")]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

/// Invalid benchmark parameters or run configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("mlotz requires an even m >= 2 with m <= n and (m/2) | n, got m={m}, n={n}")]
    InvalidMlotz { m: u32, n: u32 },
    #[error("omm requires n >= 1")]
    InvalidOmm,
    #[error("cocz requires an even n >= 2, got n={n}")]
    InvalidCocz { n: u32 },
    #[error("archive size must be at least 1")]
    InvalidArchiveSize,
    #[error("budget must be at least 1")]
    InvalidBudget,
    #[error("reference point must have {expected} components <= 0")]
    InvalidReferencePoint { expected: usize },
    #[error("aga grid range {grid_range} is below f_max {f_max}")]
    InvalidGridRange { grid_range: u32, f_max: u32 },
    #[error("start genotype has length {got}, benchmark needs {expected}")]
    InvalidStart { got: usize, expected: usize },
    #[error("instance too large for exact computation: {0}")]
    InstanceTooLarge(String),
}
