use thiserror::Error;

/// Invalid arguments to the discretization primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("fractional order {0} outside (0, 1]")]
    Alpha(f64),
    #[error("grid spacing {0} must be positive and finite")]
    Spacing(f64),
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },
    #[error("field has {field} nodes but weight table covers {table}")]
    SizeMismatch { field: usize, table: usize },
}

/// Failures while setting up or marching a simulation.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unstable at step {step} (t = {t}): {reason}")]
    Unstable { step: u64, t: f64, reason: String },
}
