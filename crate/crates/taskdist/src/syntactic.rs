use std::collections::BTreeMap;

use msfs_measures::{shannon_entropy, DiscreteDistribution};

use crate::{split_error, Strategy, TaskError, GOAL, WORKERS};

/// Syntactic content of the hierarchy's variables, in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntacticContent {
    pub worker_state: f64,
    pub mid_state: f64,
    pub top_state: f64,
    pub worker_err: f64,
    pub mid_err: f64,
    pub top_err: f64,
    /// Per-scale state content `H(S_s^A)`, bottom scale first.
    pub scale_state: [f64; 3],
    /// Per-scale error content `H(S_s^Δ)`.
    pub scale_err: [f64; 3],
    /// Content consumed per feedback cycle; `None` where the strategy's
    /// cycle content is undefined (RB, St).
    pub cycle: Option<f64>,
}

/// Stated cycle content for Md, whose managers also track individual
/// commands; not derived from the enumeration.
const MD_CYCLE: f64 = 24.0;

fn entropy_of<F: Fn(&[u8; WORKERS]) -> i32>(f: F) -> Result<f64, TaskError> {
    let mut counts: BTreeMap<i32, f64> = BTreeMap::new();
    for bits in 0u8..16 {
        let cfg: [u8; WORKERS] = std::array::from_fn(|j| (bits >> j) & 1);
        *counts.entry(f(&cfg)).or_default() += 1.0;
    }
    let w: Vec<f64> = counts.into_values().collect();
    Ok(shannon_entropy(&DiscreteDistribution::from_weights(&w)?))
}

/// Enumerates all 16 equally likely worker configurations and tabulates every
/// variable the feedback cycle transmits.
pub fn c_syn_td(strategy: Strategy) -> Result<SyntacticContent, TaskError> {
    let top = |c: &[u8; WORKERS]| c.iter().map(|&b| b as i32).sum::<i32>();
    let worker_state = entropy_of(|c| c[0] as i32)?;
    let mid_state = entropy_of(|c| (c[0] + c[1]) as i32)?;
    let top_state = entropy_of(top)?;
    let top_err = entropy_of(|c| top(c) - GOAL)?;
    let mid_err = entropy_of(|c| split_error(top(c) - GOAL))?;
    // workers receive their mid-manager's error unchanged
    let worker_err = mid_err;

    let scale_state = [4.0 * worker_state, 2.0 * mid_state, top_state];
    let scale_err = [4.0 * worker_err, 2.0 * mid_err, top_err];
    let cycle = match strategy {
        Strategy::Bb => Some(scale_state.iter().sum::<f64>() + scale_err.iter().sum::<f64>()),
        Strategy::Md => Some(MD_CYCLE),
        Strategy::Rs => Some(scale_state[0]),
        Strategy::Rb | Strategy::St => None,
    };
    Ok(SyntacticContent {
        worker_state,
        mid_state,
        top_state,
        worker_err,
        mid_err,
        top_err,
        scale_state,
        scale_err,
        cycle,
    })
}

/// Entropy change from one scale to another: `H_to - H_from`.
pub fn inter_scale_entropy_delta(h_from: f64, h_to: f64) -> f64 {
    h_to - h_from
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abstraction_loses_information() {
        let c = c_syn_td(Strategy::Bb).unwrap();
        assert!((inter_scale_entropy_delta(c.scale_state[0], c.scale_state[1]) + 1.0).abs() < 1e-12);
        let d = inter_scale_entropy_delta(c.scale_state[1], c.scale_state[2]);
        assert!((d + 0.97).abs() < 0.005, "{d}");
        assert_eq!(inter_scale_entropy_delta(2.0, 2.0), 0.0);
    }

    #[test]
    fn undefined_cycles() {
        assert_eq!(c_syn_td(Strategy::Rb).unwrap().cycle, None);
        assert_eq!(c_syn_td(Strategy::St).unwrap().cycle, None);
        assert_eq!(c_syn_td(Strategy::Rs).unwrap().cycle, Some(4.0));
    }
}
