use crate::{KernelError, Result};

/// `Σ v·w / Σ w`, e.g. per-run averages weighted by their number of cycles.
pub fn aggregate_weighted(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(KernelError::Aggregation(format!("{} values but {} weights", values.len(), weights.len())));
    }
    if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
        return Err(KernelError::Aggregation("negative or non-finite weight".into()));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(KernelError::Aggregation("all weights are zero".into()));
    }
    Ok(values.iter().zip(weights).map(|(v, w)| v * w).sum::<f64>() / total)
}
