use msfs_kernel::{par_map, rng_stream, stream_id};

use crate::{simulate, RcConfig, RcError, RcRun, StepMeasures};

/// Runs `repetitions` independent worlds in parallel; repetition `i` draws
/// from stream `(seed, i)`.
pub fn run_repetitions(cfg: &RcConfig, seed: u64, repetitions: usize) -> Result<Vec<RcRun>, RcError> {
    let reps: Vec<u64> = (0..repetitions as u64).collect();
    par_map(&reps, |&i| simulate(cfg, &mut rng_stream(seed, stream_id(i, 0)))).into_iter().collect()
}

/// Per-step mean of a measure over repetitions (NA where every run is NA).
pub fn mean_series(runs: &[RcRun], pick: impl Fn(&StepMeasures) -> Option<f64>) -> Vec<Option<f64>> {
    let len = runs.iter().map(|r| r.steps.len()).min().unwrap_or(0);
    (0..len)
        .map(|t| {
            let (s, n) = runs.iter().filter_map(|r| pick(&r.steps[t])).fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
            (n > 0).then(|| s / n as f64)
        })
        .collect()
}
