use msfs_kernel::{aggregate_weighted, par_map, rng_stream, stream_id};
use serde::Serialize;

use crate::{c_syn_cd, cycle_measures, simulate, summarize, CdConfig, CdError, CdStrategy, RunSummary};

/// Cycle-weighted averages over the repetitions of one `(N, R, strategy)` point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub n: usize,
    pub r: usize,
    pub strategy: CdStrategy,
    pub runs: Vec<RunSummary>,
    /// Plain mean of the simulation lengths.
    pub t_avg: f64,
    pub delta_sm: Option<f64>,
    pub delta_pr: Option<f64>,
    pub delta_th: Option<f64>,
    pub v_sm_th: Option<f64>,
    pub v_pr_gl: Option<f64>,
    pub e_sm_th: Option<f64>,
    pub e_pr_gl: Option<f64>,
}

fn weighted(runs: &[RunSummary], pick: impl Fn(&RunSummary) -> Option<f64>) -> Option<f64> {
    let (v, w): (Vec<f64>, Vec<f64>) = runs.iter().filter_map(|r| pick(r).map(|v| (v, r.cycles as f64))).unzip();
    aggregate_weighted(&v, &w).ok()
}

/// Runs `repetitions` seeded simulations of one configuration in parallel;
/// repetition `i` draws from stream `(seed, i)`.
pub fn run_point(cfg: &CdConfig, seed: u64, repetitions: usize) -> Result<SweepPoint, CdError> {
    cfg.validate()?;
    let c = c_syn_cd(cfg.n, cfg.r, cfg.strategy)?.cycle;
    let reps: Vec<u64> = (0..repetitions as u64).collect();
    let runs = par_map(&reps, |&i| -> Result<RunSummary, CdError> {
        let mut rng = rng_stream(seed, stream_id(i, 0));
        let run = simulate(cfg, &mut rng)?;
        let m = cycle_measures(&run, c, cfg.literal_goal_sign)?;
        Ok(summarize(&run, &m, c))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let t_avg = runs.iter().map(|r| r.t_collapse as f64).sum::<f64>() / runs.len().max(1) as f64;
    Ok(SweepPoint {
        n: cfg.n,
        r: cfg.r,
        strategy: cfg.strategy,
        t_avg,
        delta_sm: weighted(&runs, |r| r.delta_sm_avg),
        delta_pr: weighted(&runs, |r| r.delta_pr_avg),
        delta_th: weighted(&runs, |r| r.delta_th_avg),
        v_sm_th: weighted(&runs, |r| r.v_sm_th_avg),
        v_pr_gl: weighted(&runs, |r| r.v_pr_gl_avg),
        e_sm_th: weighted(&runs, |r| r.e_sm_th_avg),
        e_pr_gl: weighted(&runs, |r| r.e_pr_gl_avg),
        runs,
    })
}
