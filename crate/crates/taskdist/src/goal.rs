use crate::{build_transition_matrix, c_syn_td, Strategy, TaskError, WORKERS};

/// Goal state value of each class `z`.
pub const SV_GOAL: [f64; WORKERS + 1] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct GoalPoint {
    pub m: usize,
    /// Probability of being at the goal after `m` steps from `0000`.
    pub p_goal: f64,
    /// Adaptation value from `0000`.
    pub v_adapt: f64,
    /// Adaptation value from the goal (ability to keep it).
    pub v_adapt_goal: f64,
    pub p_goal_keep: f64,
    pub v_goal: f64,
    /// Cumulative pragmatic efficiency; `None` at `m = 0` or when the cycle
    /// content is undefined.
    pub e_goal: Option<f64>,
}

/// Pragmatic goal value curve over `m = 0..=m_max`, starting from all workers
/// on `k_0`.
pub fn goal_curve(strategy: Strategy, error_inject: bool, m_max: usize) -> Result<Vec<GoalPoint>, TaskError> {
    let matrix = build_transition_matrix(strategy, error_inject);
    let cycle = c_syn_td(strategy)?.cycle;
    let lag = strategy.pipeline_lag();

    let mut from_start = [0.0; WORKERS + 1];
    from_start[0] = 1.0;
    let mut from_goal = [0.0; WORKERS + 1];
    from_goal[WORKERS] = 1.0;

    let value = |d: &[f64; WORKERS + 1]| d.iter().zip(SV_GOAL).map(|(p, v)| p * v).sum::<f64>();

    let mut out = Vec::with_capacity(m_max + 1);
    let mut running = 0.0;
    for m in 0..=m_max {
        if m > lag {
            from_start = matrix.apply(&from_start);
            from_goal = matrix.apply(&from_goal);
        }
        let v_adapt = value(&from_start);
        let v_adapt_goal = value(&from_goal);
        let gain = v_adapt - SV_GOAL[0];
        let p_goal_keep = if gain >= 0.0 { 2.0 - v_adapt_goal } else { v_adapt_goal };
        let v_goal = if m == 0 {
            0.0
        } else if p_goal_keep == 0.0 {
            -1.0
        } else {
            gain / p_goal_keep
        };
        if m > 0 {
            running += v_goal;
        }
        let e_goal = match (m, cycle) {
            (0, _) | (_, None) => None,
            (_, Some(c)) => Some(running / (m as f64 * c)),
        };
        out.push(GoalPoint { m, p_goal: from_start[WORKERS], v_adapt, v_adapt_goal, p_goal_keep, v_goal, e_goal });
    }
    Ok(out)
}
