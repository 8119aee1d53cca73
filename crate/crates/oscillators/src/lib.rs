//! Hierarchies of delay-coupled two-component (X, Y) oscillators.
//!
//! Each oscillator's X production is repressed by its own delayed Y and by a
//! delayed coupling signal Γ mixing its parent's X (weight `w`) with the mean
//! X of its children. Only X concentrations travel between scales. The goal is
//! synchronised oscillation of the bottom scale.

mod calibrate;
mod measures;
mod model;
mod topology;

pub use calibrate::{calibrate, sync_time, CalibrationPoint, SYNC_THRESHOLD};
pub use measures::{c_syn_ho, measures_ho, CSynHo, HoMeasures, DEFAULT_CSYN_GRID};
pub use model::{
    derivatives, gamma, initial_state, integrate, OscConfig, Trajectory, CALIBRATED_F, CALIBRATED_TAU, Y_LAG,
};
pub use topology::Topology;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OscError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Measure(#[from] msfs_measures::MeasureError),
}
