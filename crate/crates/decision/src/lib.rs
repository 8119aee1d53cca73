//! Collective decision-making: agents estimate the share of task A on a
//! polarised grid, agree on a collective opinion and push the environment
//! back; the environment collapses when the share leaves `(0.1, 0.9)`.

mod content;
mod grid;
mod measures;
mod model;
mod strategy;
mod sweep;

pub use content::{c_syn_cd, opinion_entropy, SyntacticContentCd};
pub use grid::{scan_offsets, InfoGrid, GRID_CELLS, GRID_SIDE, INNER_SIDE};
pub use measures::{cycle_measures, summarize, CycleMeasures, RunSummary};
pub use model::{consensus_time, simulate, CdConfig, CdRun, CycleRecord, StepRecord};
pub use strategy::CdStrategy;
pub use sweep::{run_point, SweepPoint};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CdError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error(transparent)]
    Measure(#[from] msfs_measures::MeasureError),
    #[error(transparent)]
    Kernel(#[from] msfs_kernel::KernelError),
}
