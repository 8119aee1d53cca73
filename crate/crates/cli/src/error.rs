use msfs_kernel::KernelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The input does not match the expected schema (exit code 2).
    #[error("schema error: {0}")]
    Schema(String),
    /// A model or the file system failed while running (exit code 3).
    #[error("runtime error: {0}")]
    Runtime(String),
    /// Verification found mismatching cells (exit code 1).
    #[error("{0} of {1} cells differ")]
    Mismatch(usize, usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(..) => 1,
            CliError::Schema(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Config(m) => CliError::Schema(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
