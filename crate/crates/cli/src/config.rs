//! Experiment files: one TOML document per experiment, expanded into one
//! [`ExperimentConfig`] per (strategy, sweep point).

use std::collections::BTreeMap;
use std::path::Path;

use msfs_kernel::ExperimentConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Catalog, CliError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

impl OneOrMany {
    pub fn to_vec(&self) -> Vec<String> {
        match self {
            OneOrMany::One(s) => vec![s.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunFile {
    pub case: String,
    /// One strategy or a list; each is run over every sweep point.
    pub strategy: OneOrMany,
    #[serde(default)]
    pub seed: u64,
    /// Defaults to the case study's own horizon.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default = "one")]
    pub repetitions: usize,
    #[serde(default)]
    pub full_trace: bool,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    /// Parameters taking several values; the runner visits their Cartesian
    /// product, last key varying fastest.
    #[serde(default)]
    pub sweep: BTreeMap<String, Vec<f64>>,
}

fn one() -> usize {
    1
}

/// One expanded experiment with its position in the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub index: usize,
    pub config: ExperimentConfig,
}

impl RunFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Schema(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Applies command-line overrides.
    pub fn with_overrides(mut self, seed: Option<u64>, full_trace: bool) -> Self {
        if let Some(s) = seed {
            self.seed = s;
        }
        self.full_trace |= full_trace;
        self
    }

    /// Git-style content hash: SHA-256 of `blob <len>\0` followed by the
    /// canonical serialisation of the effective configuration.
    pub fn content_hash(&self) -> Result<String, CliError> {
        let body = toml::to_string(self).map_err(|e| CliError::Runtime(e.to_string()))?;
        let mut h = Sha256::new();
        h.update(format!("blob {}\0", body.len()).as_bytes());
        h.update(body.as_bytes());
        Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
    }

    /// Expands strategies and sweep values, validating every point.
    pub fn expand(&self, catalog: &Catalog) -> Result<Vec<(String, Vec<Point>)>, CliError> {
        let case = catalog
            .get(&self.case)
            .ok_or_else(|| CliError::Schema(format!("case: unknown case study `{}`", self.case)))?;
        if let Some((k, _)) = self.sweep.iter().find(|(k, _)| self.params.contains_key(*k)) {
            return Err(CliError::Schema(format!("sweep.{k}: also set in params")));
        }
        if let Some((k, _)) = self.sweep.iter().find(|(_, v)| v.is_empty()) {
            return Err(CliError::Schema(format!("sweep.{k}: empty list")));
        }
        let strategies = self.strategy.to_vec();
        if strategies.is_empty() {
            return Err(CliError::Schema("strategy: empty list".into()));
        }

        let mut grid: Vec<BTreeMap<String, f64>> = vec![self.params.clone()];
        for (k, values) in &self.sweep {
            grid = grid
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.insert(k.clone(), v);
                        q
                    })
                })
                .collect();
        }

        let mut out = Vec::with_capacity(strategies.len());
        for s in strategies {
            let mut points = Vec::with_capacity(grid.len());
            for (index, params) in grid.iter().enumerate() {
                let config = ExperimentConfig {
                    case: self.case.clone(),
                    strategy: s.clone(),
                    params: params.clone(),
                    seed: self.seed,
                    horizon: self.horizon.unwrap_or(case.default_horizon),
                    repetitions: self.repetitions,
                    full_trace: self.full_trace,
                };
                catalog.check(&config)?;
                points.push(Point { index, config });
            }
            out.push((s, points));
        }
        Ok(out)
    }
}
