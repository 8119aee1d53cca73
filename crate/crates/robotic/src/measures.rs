use serde::Serialize;

use crate::{actual_vector, estimate_demand, relevant_rooms, RcError, Robot, ROOMS};

/// Feedback windows (steps) for the pragmatic goal value.
pub const WINDOWS: [usize; 3] = [10, 100, 500];

/// Mean over robots of the largest absolute change among the six estimates.
pub fn semantic_delta(prev: &[[f64; 6]], now: &[[f64; 6]]) -> Result<f64, RcError> {
    if prev.len() != now.len() || now.is_empty() {
        return Err(RcError::Validation(format!("estimate sets cover {} and {} robots", prev.len(), now.len())));
    }
    let total: f64 =
        prev.iter().zip(now).map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)).sum();
    Ok(total / now.len() as f64)
}

/// Distances between the robots' models and the actual state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaTruth {
    /// Mean absolute error of the six normalised counts.
    pub counts: f64,
    /// Share of robots whose goal is not the relevant room of highest demand.
    pub full: f64,
    /// As `full`, restricted to robots whose goal is not their own room.
    pub partial: f64,
}

impl DeltaTruth {
    pub fn as_array(&self) -> [f64; 3] {
        [self.counts, self.full, self.partial]
    }
}

pub fn delta_truth(counts: &[usize; ROOMS], robots: &[Robot]) -> Result<DeltaTruth, RcError> {
    let n = robots.len() as f64;
    let (mut err, mut full, mut partial) = (0.0, 0usize, 0usize);
    for r in robots {
        let v = actual_vector(counts, r.room);
        err += r.estimate.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum::<f64>();
        let (_, best) = estimate_demand(&v)?;
        let target = relevant_rooms(r.room)[best];
        if r.goal != target {
            full += 1;
            if r.goal != r.room {
                partial += 1;
            }
        }
    }
    Ok(DeltaTruth { counts: err / (6.0 * n), full: full as f64 / n, partial: partial as f64 / n })
}

/// `Δ_gl^{t−θ} − Δ_gl^t` from a series indexed by step (index 0 = start).
pub fn window_value(delta_gl: &[f64], t: usize, theta: usize) -> Option<f64> {
    (t >= theta && t < delta_gl.len()).then(|| delta_gl[t - theta] - delta_gl[t])
}

/// Everything recorded after one step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepMeasures {
    pub t: usize,
    pub delta_sm: f64,
    pub delta_th: DeltaTruth,
    /// Counts, full and partial sub-models.
    pub v_sm_th: [Option<f64>; 3],
    pub e_sm_th: [Option<f64>; 3],
    pub delta_gl: f64,
    /// One entry per window in [`WINDOWS`].
    pub v_pr_gl: [Option<f64>; 3],
    pub e_pr_gl: [Option<f64>; 3],
    pub robots: [usize; ROOMS],
}
