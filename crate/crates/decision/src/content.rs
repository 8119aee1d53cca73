use msfs_measures::{shannon_entropy, DiscreteDistribution};

use crate::{CdError, CdStrategy};

/// Number of two-decimal values in `[0.00, 1.00]` a random opinion can take.
const RANDOM_LEVELS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntacticContentCd {
    /// Entropy of one individual opinion (bits).
    pub h_opinion: f64,
    /// `N · H(O_i)`.
    pub h_s1: f64,
    /// Entropy of the collective opinion.
    pub h_s2: f64,
    /// `H(S_1) + H(S_2)`.
    pub cycle: f64,
}

fn binomial_weights(n: usize) -> Vec<f64> {
    // Pascal row in floating point, scaled each step to avoid overflow.
    let mut row = vec![1.0f64];
    for _ in 0..n {
        let mut next = vec![0.0; row.len() + 1];
        for (k, w) in row.iter().enumerate() {
            next[k] += 0.5 * w;
            next[k + 1] += 0.5 * w;
        }
        row = next;
    }
    row
}

fn entropy_of(weights: &[f64]) -> Result<f64, CdError> {
    Ok(shannon_entropy(&DiscreteDistribution::from_weights(weights)?))
}

/// Entropy of an opinion formed as the mean of `r` fair binary sources.
pub fn opinion_entropy(r: usize) -> Result<f64, CdError> {
    entropy_of(&binomial_weights(r))
}

/// Distribution of the sum of `n` independent uniform draws on `levels` values.
fn uniform_sum_weights(n: usize, levels: usize) -> Vec<f64> {
    let mut dist = vec![1.0];
    let p = 1.0 / levels as f64;
    for _ in 0..n {
        let mut next = vec![0.0; dist.len() + levels - 1];
        for (s, w) in dist.iter().enumerate() {
            for v in next[s..s + levels].iter_mut() {
                *v += w * p;
            }
        }
        dist = next;
    }
    dist
}

/// Syntactic content of one feedback cycle with sources assumed fair.
///
/// The collective opinion under consensus is the mean of `N·R` fair bits, so
/// its entropy is that of Binomial(`N·R`, ½) exactly. Under random_CN it is a
/// single opinion; under random_OP the mean of `N` uniform two-decimal values;
/// under random_TOT a single uniform two-decimal value with no opinion scale.
pub fn c_syn_cd(n: usize, r: usize, strategy: CdStrategy) -> Result<SyntacticContentCd, CdError> {
    if n == 0 || r == 0 {
        return Err(CdError::Config("N and R must be at least 1".into()));
    }
    let uniform = (RANDOM_LEVELS as f64).log2();
    let (h_opinion, h_s2) = match strategy {
        CdStrategy::Consensus => (opinion_entropy(r)?, opinion_entropy(n * r)?),
        CdStrategy::RandomCn => {
            let h = opinion_entropy(r)?;
            (h, h)
        }
        CdStrategy::RandomOp => (uniform, entropy_of(&uniform_sum_weights(n, RANDOM_LEVELS))?),
        CdStrategy::RandomTot => (0.0, uniform),
    };
    let h_s1 = n as f64 * h_opinion;
    Ok(SyntacticContentCd { h_opinion, h_s1, h_s2, cycle: h_s1 + h_s2 })
}
