use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("support violation at x = {x}: p > 0 where q = 0")]
    Support { x: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("grid needs at least two increasing points, got {0}")]
    Grid(String),
    #[error("Bates sample count must be >= 1, got {0}")]
    BatesOrder(usize),
    #[error("efficiency undefined for syntactic content {0}")]
    ZeroContent(f64),
    #[error("invalid series: {0}")]
    Series(String),
}
