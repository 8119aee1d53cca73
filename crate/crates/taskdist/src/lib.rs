//! Four workers, two mid-managers and one top-manager sharing two task types.
//!
//! Worker states ascend as sums (abstraction), the top-manager compares the
//! total against the goal and the error descends, halved per scale
//! (reification). Five strategies decide how workers react. The crate offers
//! the exact class-level Markov analysis, a step model for scripted or random
//! replay, and the syntactic/semantic/pragmatic measures on both.

mod goal;
mod hierarchy;
mod markov;
mod scenario;
mod strategy;
mod syntactic;

pub use goal::{goal_curve, GoalPoint, SV_GOAL};
pub use hierarchy::{split_error, Draws, RandomDraws, ScriptedDraws, StepRecord, TaskHierarchy};
pub use markov::{build_transition_matrix, TransitionMatrix};
pub use scenario::{scenario_rows, stv, ScenarioRow, SCENARIO_SWITCHES};
pub use strategy::Strategy;
pub use syntactic::{c_syn_td, inter_scale_entropy_delta, SyntacticContent};

/// Number of workers.
pub const WORKERS: usize = 4;
/// Goal: every worker on task `k_1`.
pub const GOAL: i32 = 4;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TaskError {
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("invalid transition matrix: {0}")]
    Matrix(String),
    #[error(transparent)]
    Measure(#[from] msfs_measures::MeasureError),
}
