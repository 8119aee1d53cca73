//! Deterministic six-step replay from `0000` toward `1111` and the per-step
//! semantic and pragmatic measures.

use crate::{c_syn_td, ScriptedDraws, Strategy, TaskError, TaskHierarchy, GOAL};

/// BB switch draws: workers 0 and 2 switch at step 2, workers 1 and 3 at
/// step 3. Md ignores draws.
pub const SCENARIO_SWITCHES: [(usize, usize); 4] = [(2, 0), (2, 2), (3, 1), (3, 3)];

const STEPS: usize = 5;
/// Largest possible truth distance, used to scale state values.
const DELTA_TH_MAX: f64 = 4.0;
/// Readability factor applied to semantic efficiency.
const EFFICIENCY_COEF: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRow {
    pub t: usize,
    pub on_goal_task: i32,
    /// Summed absolute change of every agent variable since the last step.
    pub semantic_delta: i32,
    pub delta_truth: i32,
    pub sv_truth: f64,
    pub v_truth: Option<f64>,
    pub e_truth: Option<f64>,
    pub scope_delta: i32,
    pub adapt_delta: Option<i32>,
}

/// Normalised change in state value: NA without a previous value, 0 when
/// unchanged, `(sv - prev) / (sv + prev)` otherwise.
pub fn stv(sv: f64, prev: Option<f64>) -> Option<f64> {
    let prev = prev?;
    if sv == prev {
        // also covers sv = prev = 0, where the ratio is undefined
        return Some(0.0);
    }
    Some((sv - prev) / (sv + prev))
}

/// Replays the scenario for `strategy`.
///
/// Truth distances are expressed in each strategy's own error convention: BB
/// managers hold the signed distance `state - goal`, Md managers the count of
/// switches still required `goal - state`. Missing estimates count as 0.
pub fn scenario_rows(strategy: Strategy) -> Result<Vec<ScenarioRow>, TaskError> {
    let mut draws = ScriptedDraws { switches: SCENARIO_SWITCHES.to_vec() };
    let records = TaskHierarchy::new(strategy, [0; 4]).run(STEPS, &mut draws);
    let cycle = c_syn_td(strategy)?.cycle;
    let sign = if strategy == Strategy::Md { -1 } else { 1 };

    let mut rows: Vec<ScenarioRow> = Vec::with_capacity(records.len());
    let mut prev_vars = vec![None; records[0].variables().len()];
    for rec in &records {
        let vars = rec.variables();
        let semantic_delta = vars.iter().zip(&prev_vars).map(|(a, b)| (a.unwrap_or(0) - b.unwrap_or(0)).abs()).sum();
        prev_vars = vars;

        let obs = rec.on_goal_task() - GOAL;
        let est = rec.mid_estimate().unwrap_or(0);
        let delta_truth = sign * (est - obs);
        let sv_truth = 1.0 - (delta_truth as f64 / DELTA_TH_MAX).abs();
        let v_truth = stv(sv_truth, rows.last().map(|r| r.sv_truth));
        let e_truth = match (v_truth, cycle) {
            (Some(v), Some(c)) => Some((v + 1.0) / 2.0 / c * EFFICIENCY_COEF),
            _ => None,
        };
        let adapt_delta = match rows.last() {
            Some(_) if rec.t >= 2 => Some(rec.switched - records[rec.t - 1].switched),
            _ => None,
        };
        rows.push(ScenarioRow {
            t: rec.t,
            on_goal_task: rec.on_goal_task(),
            semantic_delta,
            delta_truth,
            sv_truth,
            v_truth,
            e_truth,
            scope_delta: rec.scope,
            adapt_delta,
        });
    }
    Ok(rows)
}
