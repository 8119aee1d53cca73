use crate::{MeasureError, Result};

/// Which reference a state value is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvRole {
    Truth,
    Optimal,
    Goal,
}

/// State values over time.
#[derive(Debug, Clone, PartialEq)]
pub struct StateValueSeries {
    pub role: SvRole,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl StateValueSeries {
    pub fn new(role: SvRole, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(MeasureError::Series("times and values differ in length".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(MeasureError::Series("times not strictly increasing".into()));
        }
        Ok(Self { role, times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Per-step value changes; the first entry is NA.
    pub fn deltas(&self) -> Vec<Option<f64>> {
        std::iter::once(None).chain(self.values.windows(2).map(|w| Some(w[1] - w[0]))).take(self.values.len()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    SyntacticContent,
    SemanticDelta,
    SemanticTruthValue,
    SemanticGoalValue,
    PragmaticDelta,
    PragmaticGoalValue,
    Efficiency,
}

/// One measure over time, evaluated over windows of length `window`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSeries {
    pub kind: MeasureKind,
    pub window: f64,
    pub times: Vec<f64>,
    pub values: Vec<Option<f64>>,
}

impl MeasureSeries {
    pub fn new(kind: MeasureKind, window: f64) -> Self {
        Self { kind, window, times: Vec::new(), values: Vec::new() }
    }

    pub fn push(&mut self, t: f64, v: Option<f64>) {
        self.times.push(t);
        self.values.push(v);
    }

    /// Mean of the defined (non-NA) values.
    pub fn mean(&self) -> Option<f64> {
        let (s, n) = self.values.iter().flatten().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
        (n > 0).then(|| s / n as f64)
    }

    /// Checks every defined value lies in `[lo, hi]`.
    pub fn check_bounds(&self, lo: f64, hi: f64) -> Result<()> {
        match self.values.iter().flatten().find(|v| **v < lo || **v > hi) {
            Some(v) => Err(MeasureError::Series(format!("{:?} value {v} outside [{lo}, {hi}]", self.kind))),
            None => Ok(()),
        }
    }
}
