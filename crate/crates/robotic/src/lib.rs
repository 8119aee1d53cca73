//! A swarm of robots distributing itself over four ring-connected rooms in
//! proportion to the objects each room holds. Robots sense their current
//! room, exchange estimates with nearby robots, estimate demand over their
//! relevant rooms (current room and its two neighbours) and pick a goal room.

mod demand;
mod measures;
mod model;
mod robot;
mod strategy;
mod sweep;
mod world;

pub use demand::estimate_demand;
pub use measures::{delta_truth, semantic_delta, window_value, DeltaTruth, StepMeasures, WINDOWS};
pub use model::{simulate, RcConfig, RcRun};
pub use robot::{normalize_half, Robot};
pub use strategy::RcStrategy;
pub use sweep::{mean_series, run_repetitions};
pub use world::{
    actual_vector, delta_gl, desired_distribution, locomote, relevant_rooms, World, OBJECTS, ROBOTS, ROOMS,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RcError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("demand undefined: every relevant room has zero estimates")]
    DegenerateDemand,
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Measure(#[from] msfs_measures::MeasureError),
}
