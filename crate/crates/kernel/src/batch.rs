use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{par_map, KernelError, Result};

/// One reproducible experiment: everything a batch depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub case: String,
    pub strategy: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
    /// Maximum number of steps, or seconds for continuous-time models.
    pub horizon: f64,
    #[serde(default = "one")]
    pub repetitions: usize,
    /// Keep model state snapshots in the trace.
    #[serde(default)]
    pub full_trace: bool,
}

fn one() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(case: &str, strategy: &str, horizon: f64) -> Self {
        Self {
            case: case.into(),
            strategy: strategy.into(),
            params: BTreeMap::new(),
            seed: 0,
            horizon,
            repetitions: 1,
            full_trace: false,
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    pub fn param(&self, name: &str, default: f64) -> f64 {
        self.params.get(name).copied().unwrap_or(default)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0) {
            return Err(KernelError::Config(format!("horizon must be positive, got {}", self.horizon)));
        }
        if self.repetitions == 0 {
            return Err(KernelError::Config("repetitions must be at least 1".into()));
        }
        if let Some((k, v)) = self.params.iter().find(|(_, v)| !v.is_finite()) {
            return Err(KernelError::Config(format!("parameter {k} is not finite: {v}")));
        }
        Ok(())
    }
}

/// Output of one repetition: a table of per-step measure values plus the
/// step indices where feedback cycles end.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RunTrace {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub cycle_boundaries: Vec<usize>,
    /// Free-form state snapshots, only filled for full traces.
    pub snapshots: Vec<String>,
}

impl RunTrace {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.rows.iter().find(|r| r.len() != self.columns.len()) {
            return Err(KernelError::Trace(format!("row with {} cells for {} columns", r.len(), self.columns.len())));
        }
        if self.cycle_boundaries.windows(2).any(|w| w[1] <= w[0]) {
            return Err(KernelError::Trace("cycle boundaries not increasing".into()));
        }
        if self.cycle_boundaries.last().is_some_and(|&b| b > self.rows.len()) {
            return Err(KernelError::Trace("cycle boundary past the end of the trace".into()));
        }
        Ok(())
    }
}

/// Runs one repetition: `(config, repetition index) -> trace`.
pub type Runner = Box<dyn Fn(&ExperimentConfig, u64) -> Result<RunTrace> + Send + Sync>;

pub struct CaseEntry {
    pub id: &'static str,
    pub strategies: Vec<&'static str>,
    pub runner: Runner,
}

/// Case studies known to a binary, in registration order.
#[derive(Default)]
pub struct Registry {
    cases: Vec<CaseEntry>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, id: &'static str, strategies: &[&'static str], runner: Runner) {
        self.cases.push(CaseEntry { id, strategies: strategies.to_vec(), runner });
    }

    pub fn cases(&self) -> impl Iterator<Item = &CaseEntry> {
        self.cases.iter()
    }

    pub fn get(&self, id: &str) -> Option<&CaseEntry> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Checks the case and strategy exist and the config is well formed.
    pub fn check(&self, cfg: &ExperimentConfig) -> Result<&CaseEntry> {
        cfg.validate()?;
        let case =
            self.get(&cfg.case).ok_or_else(|| KernelError::Config(format!("unknown case study `{}`", cfg.case)))?;
        if !case.strategies.iter().any(|s| *s == cfg.strategy) {
            return Err(KernelError::Config(format!(
                "unknown strategy `{}` for `{}` (expected one of {})",
                cfg.strategy,
                cfg.case,
                case.strategies.join(", ")
            )));
        }
        Ok(case)
    }

    /// Runs every repetition. Trace `i` depends only on `(cfg, i)`.
    pub fn run_batch(&self, cfg: &ExperimentConfig) -> Result<Vec<RunTrace>> {
        let case = self.check(cfg)?;
        let reps: Vec<u64> = (0..cfg.repetitions as u64).collect();
        let traces = par_map(&reps, |&i| (case.runner)(cfg, i));
        let traces = traces.into_iter().collect::<Result<Vec<_>>>()?;
        for t in &traces {
            t.validate()?;
        }
        Ok(traces)
    }
}
