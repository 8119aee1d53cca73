use msfs_measures::efficiency;
use serde::Serialize;

use crate::{CdError, CdRun};

/// Measures at the end of one feedback cycle, compared with the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleMeasures {
    pub t: usize,
    /// `|O_coll − W_A|` at the cycle end.
    pub delta_th: f64,
    /// `1 − 2|0.5 − W_A|` at the cycle end.
    pub delta_gl: f64,
    pub delta_sm: Option<f64>,
    pub v_sm_th: Option<f64>,
    pub delta_pr: Option<f64>,
    pub v_pr_gl: Option<f64>,
    pub e_sm_th: Option<f64>,
    pub e_pr_gl: Option<f64>,
}

pub fn delta_gl(w_a: f64) -> f64 {
    1.0 - 2.0 * (0.5 - w_a).abs()
}

/// Per-cycle semantic and pragmatic measures. The goal value is
/// `Δ_gl^t − Δ_gl^{t−c}` (negative when moving towards collapse) unless
/// `literal_goal_sign` asks for the opposite orientation.
pub fn cycle_measures(run: &CdRun, c_syn: f64, literal_goal_sign: bool) -> Result<Vec<CycleMeasures>, CdError> {
    let mut out = Vec::with_capacity(run.cycles.len());
    for (i, cy) in run.cycles.iter().enumerate() {
        let delta_th = (cy.o_coll - cy.w_a).abs();
        let dgl = delta_gl(cy.w_a);
        let mut m = CycleMeasures {
            t: cy.end,
            delta_th,
            delta_gl: dgl,
            delta_sm: None,
            v_sm_th: None,
            delta_pr: None,
            v_pr_gl: None,
            e_sm_th: None,
            e_pr_gl: None,
        };
        if i > 0 {
            let prev = &run.cycles[i - 1];
            let v_th = (prev.o_coll - prev.w_a).abs() - delta_th;
            let mut v_gl = dgl - delta_gl(prev.w_a);
            if literal_goal_sign {
                v_gl = -v_gl;
            }
            m.delta_sm = Some((prev.o_coll - cy.o_coll).abs());
            m.delta_pr = Some((prev.w_a - cy.w_a).abs());
            m.v_sm_th = Some(v_th);
            m.v_pr_gl = Some(v_gl);
            m.e_sm_th = Some(efficiency(v_th, c_syn)?);
            m.e_pr_gl = Some(efficiency(v_gl, c_syn)?);
        }
        out.push(m);
    }
    Ok(out)
}

/// Per-simulation averages over its feedback cycles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunSummary {
    pub t_collapse: usize,
    pub collapsed: bool,
    pub cycles: usize,
    pub delta_sm_avg: Option<f64>,
    pub delta_pr_avg: Option<f64>,
    pub delta_th_avg: Option<f64>,
    pub v_sm_th_avg: Option<f64>,
    pub v_pr_gl_avg: Option<f64>,
    pub c_syn_cycle: f64,
    pub e_sm_th_avg: Option<f64>,
    pub e_pr_gl_avg: Option<f64>,
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (s, n) = values.flatten().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| s / n as f64)
}

pub fn summarize(run: &CdRun, measures: &[CycleMeasures], c_syn: f64) -> RunSummary {
    RunSummary {
        t_collapse: run.t_end,
        collapsed: run.collapsed,
        cycles: run.cycles.len(),
        delta_sm_avg: mean(measures.iter().map(|m| m.delta_sm)),
        delta_pr_avg: mean(measures.iter().map(|m| m.delta_pr)),
        delta_th_avg: mean(measures.iter().map(|m| Some(m.delta_th))),
        v_sm_th_avg: mean(measures.iter().map(|m| m.v_sm_th)),
        v_pr_gl_avg: mean(measures.iter().map(|m| m.v_pr_gl)),
        c_syn_cycle: c_syn,
        e_sm_th_avg: mean(measures.iter().map(|m| m.e_sm_th)),
        e_pr_gl_avg: mean(measures.iter().map(|m| m.e_pr_gl)),
    }
}
