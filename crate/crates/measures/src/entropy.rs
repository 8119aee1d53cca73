use crate::{MeasureError, Result};

const SUM_TOL: f64 = 1e-9;

/// Probability mass over a finite set of labelled outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    outcomes: Vec<String>,
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(outcomes: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        if outcomes.len() != probs.len() {
            return Err(MeasureError::InvalidDistribution(format!(
                "{} outcomes but {} probabilities",
                outcomes.len(),
                probs.len()
            )));
        }
        if probs.is_empty() {
            return Err(MeasureError::InvalidDistribution("no outcomes".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0) {
            return Err(MeasureError::InvalidDistribution(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(MeasureError::InvalidDistribution(format!("probabilities sum to {sum}")));
        }
        Ok(Self { outcomes, probs })
    }

    /// Distribution with outcomes labelled `0..n`.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        let outcomes = (0..probs.len()).map(|i| i.to_string()).collect();
        Self::new(outcomes, probs)
    }

    /// Normalise non-negative weights (e.g. counts) into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || weights.iter().any(|w| *w < 0.0) {
            return Err(MeasureError::InvalidDistribution("weights must be non-negative with a positive sum".into()));
        }
        Self::from_probs(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_probs(vec![1.0 / n as f64; n])
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Shannon entropy in bits. Zero-probability outcomes contribute nothing.
pub fn shannon_entropy(d: &DiscreteDistribution) -> f64 {
    d.probs.iter().filter(|p| **p > 0.0).map(|p| -p * p.log2()).sum::<f64>().max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fair_coin_is_one_bit() {
        let d = DiscreteDistribution::uniform(2).unwrap();
        assert!((shannon_entropy(&d) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_is_zero() {
        let d = DiscreteDistribution::from_probs(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&d), 0.0);
    }

    #[test]
    fn four_fair_bits_summed() {
        let d = DiscreteDistribution::from_weights(&[1.0, 4.0, 6.0, 4.0, 1.0]).unwrap();
        assert!((shannon_entropy(&d) - 2.030639).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_sum() {
        assert!(DiscreteDistribution::from_probs(vec![0.5, 0.4]).is_err());
        assert!(DiscreteDistribution::new(vec!["a".into()], vec![0.5, 0.5]).is_err());
        assert!(DiscreteDistribution::from_probs(vec![1.5, -0.5]).is_err());
    }
}
