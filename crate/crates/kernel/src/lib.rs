//! Experiment plumbing shared by every case study: reproducible random
//! streams, batch repetition (parallel when the `parallel` feature is on),
//! run traces and weighted aggregation.

mod aggregate;
mod batch;
mod error;
mod par;
mod rng;

pub use aggregate::aggregate_weighted;
pub use batch::{CaseEntry, ExperimentConfig, Registry, RunTrace, Runner};
pub use error::KernelError;
#[cfg(feature = "parallel")]
pub use par::map_parallel;
pub use par::{map_sequential, par_map, with_jobs};
pub use rng::{rng_stream, stream_id, SimRng};

pub type Result<T> = std::result::Result<T, KernelError>;
