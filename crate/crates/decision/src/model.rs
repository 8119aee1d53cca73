use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{scan_offsets, CdError, CdStrategy, InfoGrid, GRID_SIDE, INNER_SIDE};

/// Tolerance for threshold comparisons on the stepped environment weight.
const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdConfig {
    pub n: usize,
    pub r: usize,
    pub strategy: CdStrategy,
    /// Weight of the fresh scan against the previous opinion.
    #[serde(default = "d_alpha")]
    pub alpha: f64,
    /// Consensus time per agent and unit of opinion spread.
    #[serde(default = "d_kappa")]
    pub kappa: f64,
    /// Change of the A-weight per time step.
    #[serde(default = "d_delta")]
    pub delta_env: f64,
    #[serde(default = "d_start")]
    pub w_a_start: f64,
    #[serde(default = "d_horizon")]
    pub horizon: usize,
    #[serde(default = "d_low")]
    pub collapse_low: f64,
    #[serde(default = "d_high")]
    pub collapse_high: f64,
    /// Use `Δ_gl^{t−c} − Δ_gl^t` for the goal value instead of its negative.
    #[serde(default)]
    pub literal_goal_sign: bool,
    /// Keep the per-step environment trace.
    #[serde(default)]
    pub full_trace: bool,
}

fn d_alpha() -> f64 {
    0.5
}
fn d_kappa() -> f64 {
    2.0
}
fn d_delta() -> f64 {
    0.002
}
fn d_start() -> f64 {
    0.6
}
fn d_horizon() -> usize {
    5000
}
fn d_low() -> f64 {
    0.1
}
fn d_high() -> f64 {
    0.9
}

impl CdConfig {
    pub fn new(n: usize, r: usize, strategy: CdStrategy) -> Self {
        Self {
            n,
            r,
            strategy,
            alpha: d_alpha(),
            kappa: d_kappa(),
            delta_env: d_delta(),
            w_a_start: d_start(),
            horizon: d_horizon(),
            collapse_low: d_low(),
            collapse_high: d_high(),
            literal_goal_sign: false,
            full_trace: false,
        }
    }

    pub fn validate(&self) -> Result<(), CdError> {
        let bad = |m: String| Err(CdError::Config(m));
        if !(1..=30).contains(&self.n) {
            return bad(format!("n = {} outside [1, 30]", self.n));
        }
        if !(1..=30).contains(&self.r) {
            return bad(format!("r = {} outside [1, 30]", self.r));
        }
        if !(0.0..=1.0).contains(&self.alpha) || self.alpha == 0.0 {
            return bad(format!("alpha = {} outside (0, 1]", self.alpha));
        }
        if !(self.kappa >= 0.0) || !(self.delta_env > 0.0) {
            return bad("kappa must be non-negative and delta_env positive".into());
        }
        if !(0.0 <= self.collapse_low
            && self.collapse_low < self.w_a_start
            && self.w_a_start < self.collapse_high
            && self.collapse_high <= 1.0)
        {
            return bad("need 0 ≤ collapse_low < w_a_start < collapse_high ≤ 1".into());
        }
        if self.horizon == 0 {
            return bad("horizon must be at least 1".into());
        }
        Ok(())
    }

    fn collapsed(&self, w: f64) -> bool {
        w <= self.collapse_low + EPS || w >= self.collapse_high - EPS
    }
}

/// One completed feedback cycle `(start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleRecord {
    pub start: usize,
    pub end: usize,
    pub t_cn: usize,
    pub o_coll: f64,
    pub w_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub t: usize,
    pub w_a: f64,
    /// Collective opinion currently driving the environment.
    pub o_coll: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdRun {
    /// Steps executed: the collapse step, or the horizon.
    pub t_end: usize,
    pub collapsed: bool,
    pub cycles: Vec<CycleRecord>,
    pub steps: Vec<StepRecord>,
}

fn two_decimal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0..=100u32) as f64 / 100.0
}

/// Consensus time grows with group size and the spread of opinions.
pub fn consensus_time(kappa: f64, opinions: &[f64]) -> usize {
    let (lo, hi) = opinions.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &o| (l.min(o), h.max(o)));
    let spread = if opinions.is_empty() { 0.0 } else { hi - lo };
    ((kappa * opinions.len() as f64 * spread - EPS).ceil() as usize).max(1)
}

/// Runs one simulation until collapse or the horizon.
///
/// Each cycle starts by forming opinions from the grid as it is at that step,
/// then spends `T_CN` steps reaching the collective opinion. During those
/// steps the environment reacts to the previous cycle's collective opinion
/// (held during the first cycle): the A-weight grows while that opinion is
/// below it and shrinks while above.
pub fn simulate<R: Rng + ?Sized>(cfg: &CdConfig, rng: &mut R) -> Result<CdRun, CdError> {
    cfg.validate()?;
    let margin = (GRID_SIDE - INNER_SIDE) / 2;
    let mut grid = InfoGrid::new(cfg.w_a_start, rng);
    let agents: Vec<(usize, usize)> = (0..cfg.n)
        .map(|_| (rng.random_range(margin..margin + INNER_SIDE), rng.random_range(margin..margin + INNER_SIDE)))
        .collect();
    let offsets = scan_offsets(cfg.r);

    let mut opinions: Vec<f64> = Vec::new();
    let mut drive: Option<f64> = None;
    let mut k: i64 = 0;
    let mut w = cfg.w_a_start;
    let mut t = 0usize;
    let mut run = CdRun { t_end: 0, collapsed: false, cycles: Vec::new(), steps: Vec::new() };

    while t < cfg.horizon && !run.collapsed {
        // Opinion formation and the collective opinion it leads to.
        if cfg.strategy.scans() {
            let fresh = agents.iter().map(|&(r, c)| grid.scan(r, c, &offsets));
            opinions = if opinions.is_empty() {
                fresh.collect()
            } else {
                fresh.zip(&opinions).map(|(s, o)| cfg.alpha * s + (1.0 - cfg.alpha) * o).collect()
            };
        } else if cfg.strategy == CdStrategy::RandomOp {
            opinions = (0..cfg.n).map(|_| two_decimal(rng)).collect();
        }
        let (o_coll, t_cn) = match cfg.strategy {
            CdStrategy::Consensus | CdStrategy::RandomOp => {
                (opinions.iter().sum::<f64>() / opinions.len() as f64, consensus_time(cfg.kappa, &opinions))
            }
            CdStrategy::RandomCn => (opinions[rng.random_range(0..opinions.len())], 1),
            CdStrategy::RandomTot => (two_decimal(rng), 1),
        };

        let start = t;
        let mut done = 0;
        while done < t_cn && t < cfg.horizon {
            if let Some(o) = drive {
                if o < w - EPS {
                    k += 1;
                } else if o > w + EPS {
                    k -= 1;
                }
                w = (cfg.w_a_start + k as f64 * cfg.delta_env).clamp(0.0, 1.0);
                grid.set_weight(w, rng);
            }
            t += 1;
            done += 1;
            if cfg.full_trace {
                run.steps.push(StepRecord { t, w_a: w, o_coll: drive });
            }
            if cfg.collapsed(w) {
                run.collapsed = true;
                break;
            }
        }
        // A cycle cut short by collapse or the horizon never reaches its
        // collective opinion and is not recorded.
        if done == t_cn {
            run.cycles.push(CycleRecord { start, end: t, t_cn, o_coll, w_a: w });
            drive = Some(o_coll);
        }
    }
    run.t_end = t;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use msfs_kernel::rng_stream;

    use super::*;

    #[test]
    fn consensus_time_rules() {
        assert_eq!(consensus_time(2.0, &[0.4, 0.4, 0.4]), 1);
        assert_eq!(consensus_time(2.0, &[0.7]), 1);
        assert_eq!(consensus_time(2.0, &[0.2, 0.5]), 2);
        assert_eq!(consensus_time(2.0, &[0.0, 0.3, 0.1, 0.2, 0.25]), 3);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(CdConfig::new(0, 3, CdStrategy::Consensus).validate().is_err());
        assert!(CdConfig::new(3, 31, CdStrategy::Consensus).validate().is_err());
        let mut c = CdConfig::new(3, 3, CdStrategy::Consensus);
        c.w_a_start = 0.95;
        assert!(c.validate().is_err());
    }

    #[test]
    fn environment_moves_by_one_step_at_most() {
        let mut cfg = CdConfig::new(1, 1, CdStrategy::RandomTot);
        cfg.full_trace = true;
        let mut rng = rng_stream(1, 0);
        let run = simulate(&cfg, &mut rng).unwrap();
        for w in run.steps.windows(2) {
            let d = (w[1].w_a - w[0].w_a).abs();
            assert!(d < 0.002 + 1e-12);
        }
        // The first cycle has no collective opinion yet, so W_A is held.
        assert_eq!(run.steps[0].w_a, 0.6);
        assert_eq!(run.t_end, run.steps.len());
        assert!(run.collapsed || run.t_end == cfg.horizon);
    }
}
