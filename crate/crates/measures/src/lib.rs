//! Information measures for multi-scale feedback systems.
//!
//! Three families of measures share this crate:
//!
//! * **syntactic** content: Shannon entropy of discrete variables and a
//!   Jensen–Shannon based content score for continuous densities on `[0, 1]`;
//! * **semantic** measures: how knowledge changes ([`state_value_delta`]) and
//!   how close it sits to a ground truth;
//! * **pragmatic** measures: the same algebra applied to actions and goals.
//!
//! Efficiencies divide a value by the syntactic content that produced it.
//! Missing knowledge ("NA") is modelled as `None`, never as zero.

mod density;
mod entropy;
mod error;
mod series;
mod value;

pub use density::{bates_pdf, js_divergence, kl_divergence, trapezoid, Density, Grid};
pub use entropy::{shannon_entropy, DiscreteDistribution};
pub use error::MeasureError;
pub use series::{MeasureKind, MeasureSeries, StateValueSeries, SvRole};
pub use value::{efficiency, state_value_delta};

pub type Result<T> = std::result::Result<T, MeasureError>;
