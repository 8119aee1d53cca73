//! Command-line front end for the case studies: experiment files are
//! validated against each case study's parameter schema, run through the
//! batch kernel and written as schema-tagged CSV plus a JSON manifest.
//! Results can be checked cell by cell against golden files.

mod cases;
mod config;
mod error;
mod output;
mod verify;

use std::path::{Path, PathBuf};

use msfs_kernel::with_jobs;

pub use cases::{
    cd_config, ho_config, rc_config, CaseInfo, Catalog, Kind, ParamSpec, DECISION, OSCILLATORS, ROBOTIC, TASKS,
};
pub use config::{OneOrMany, Point, RunFile};
pub use error::CliError;
pub use output::{
    format_number, render_measures, schema_tag, write_outputs, PointResult, RunOutput, MANIFEST_FILE, MEASURES_FILE,
    NA, SCHEMA_VERSION, SNAPSHOTS_FILE,
};
pub use verify::{verify, CellCheck, Report, Table};

/// Runs every strategy and sweep point of an experiment file and writes the
/// outputs to `out_dir`. All points are validated before anything runs, and
/// nothing is written unless every run succeeds.
pub fn run_experiment(
    config_path: &Path,
    out_dir: &Path,
    seed: Option<u64>,
    full_trace: bool,
    jobs: Option<usize>,
) -> Result<Vec<PathBuf>, CliError> {
    if jobs == Some(0) {
        return Err(CliError::Schema("--jobs must be at least 1".into()));
    }
    let file = RunFile::load(config_path)?.with_overrides(seed, full_trace);
    let catalog = Catalog::new();
    let plan = file.expand(&catalog)?;
    let results = with_jobs(jobs, || {
        let mut results = Vec::new();
        for (strategy, points) in &plan {
            for point in points {
                let traces = catalog.run(&point.config)?;
                results.push(PointResult { strategy, point, traces });
            }
        }
        Ok::<_, CliError>(results)
    })?;
    let out = RunOutput { config_path, out_dir, run_file: &file, jobs };
    write_outputs(&out, &results)
}
