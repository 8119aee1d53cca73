use msfs_kernel::par_map;
use serde::Serialize;

use crate::{integrate, OscConfig, OscError, Trajectory};

/// Bottom-scale variance below which the hierarchy counts as synchronised.
pub const SYNC_THRESHOLD: f64 = 1e-3;

/// Earliest time after which the bottom-scale variance stays below
/// `threshold` up to the end of the run; `None` if it never settles.
pub fn sync_time(tr: &Trajectory, threshold: f64) -> Option<f64> {
    let n0 = tr.topology.sizes[0] as f64;
    let mut first_good = None;
    for k in 0..=tr.steps {
        let b = tr.bottom(k as isize);
        let mean = b.iter().sum::<f64>() / n0;
        let var = b.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n0;
        if var >= threshold {
            first_good = None;
        } else if first_good.is_none() {
            first_good = Some(k);
        }
    }
    // Settling only on the final sample is not evidence of synchrony.
    first_good.filter(|&k| k < tr.steps).map(|k| tr.time(k))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationPoint {
    pub f: f64,
    pub tau: f64,
    pub sync_two: Option<f64>,
    pub sync_three: Option<f64>,
}

impl CalibrationPoint {
    /// Both systems synchronise and the shallower one does so first.
    pub fn admissible(&self) -> bool {
        matches!((self.sync_two, self.sync_three), (Some(a), Some(b)) if a < b)
    }

    pub fn cost(&self) -> Option<f64> {
        self.admissible().then(|| self.sync_two.unwrap_or(0.0) + self.sync_three.unwrap_or(0.0))
    }
}

/// Sweeps uniform (F, τ) pairs in parallel and returns every point together
/// with the index of the admissible pair of least combined sync time.
pub fn calibrate(
    fs: &[f64],
    taus: &[f64],
    template: &OscConfig,
) -> Result<(Vec<CalibrationPoint>, Option<usize>), OscError> {
    let pairs: Vec<(f64, f64)> = fs.iter().flat_map(|&f| taus.iter().map(move |&t| (f, t))).collect();
    let run = |scales: usize, f: f64, tau: f64| -> Result<Option<f64>, OscError> {
        let cfg = OscConfig { scales, f: vec![f], tau: vec![tau], ..template.clone() };
        Ok(sync_time(&integrate(&cfg)?, SYNC_THRESHOLD))
    };
    let points = par_map(&pairs, |&(f, tau)| -> Result<CalibrationPoint, OscError> {
        Ok(CalibrationPoint { f, tau, sync_two: run(2, f, tau)?, sync_three: run(3, f, tau)? })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let best = points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.cost().map(|c| (i, c)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i);
    Ok((points, best))
}
