use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    /// Bad configuration: unknown case study or strategy, invalid parameter.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("aggregation error: {0}")]
    Aggregation(String),
    /// A model failed while running.
    #[error("model error: {0}")]
    Model(String),
    #[error("trace error: {0}")]
    Trace(String),
}
