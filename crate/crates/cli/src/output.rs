//! Result files: a measures CSV whose first line is a schema tag, optional
//! state snapshots, and a JSON manifest describing the run.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use msfs_kernel::RunTrace;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Point, RunFile};
use crate::CliError;

/// Version of the CSV layout; bump when prefix columns or formatting change.
pub const SCHEMA_VERSION: u32 = 1;
pub const MEASURES_FILE: &str = "measures.csv";
pub const SNAPSHOTS_FILE: &str = "snapshots.txt";
pub const MANIFEST_FILE: &str = "manifest.json";
/// Missing value marker.
pub const NA: &str = "NA";

/// First line of every CSV written for `case`.
pub fn schema_tag(case: &str) -> String {
    format!("#schema=msfs-csv/{SCHEMA_VERSION} case={case}")
}

/// Nine significant digits, shortest form: integers without a decimal
/// point, scientific notation only for very small or large magnitudes.
pub fn format_number(x: Option<f64>) -> String {
    let Some(x) = x else { return NA.into() };
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    let a = rounded.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Completed traces of one (strategy, sweep point).
pub struct PointResult<'a> {
    pub strategy: &'a str,
    pub point: &'a Point,
    pub traces: Vec<RunTrace>,
}

#[derive(Debug, Serialize)]
struct ManifestPoint<'a> {
    strategy: &'a str,
    index: usize,
    params: &'a BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
struct ManifestFile {
    name: String,
    sha256: String,
    rows: usize,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    schema: String,
    version: &'static str,
    config_path: String,
    output_dir: String,
    case: &'a str,
    config_hash: String,
    timestamp_unix: u64,
    seed: u64,
    repetitions: usize,
    full_trace: bool,
    jobs: Option<usize>,
    points: Vec<ManifestPoint<'a>>,
    files: Vec<ManifestFile>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Renders the measures CSV: prefix columns `strategy, point, seed, rep`
/// followed by the case study's own columns.
pub fn render_measures(case: &str, results: &[PointResult]) -> Result<(Vec<u8>, usize), CliError> {
    let columns = results
        .iter()
        .flat_map(|r| r.traces.first())
        .map(|t| &t.columns)
        .next()
        .ok_or_else(|| CliError::Runtime("no traces produced".into()))?;
    if let Some(bad) = results.iter().flat_map(|r| &r.traces).find(|t| &t.columns != columns) {
        return Err(CliError::Runtime(format!("traces disagree on columns: {:?} vs {:?}", columns, bad.columns)));
    }

    let mut out = Vec::new();
    writeln!(out, "{}", schema_tag(case))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let mut header = vec!["strategy".to_string(), "point".into(), "seed".into(), "rep".into()];
    header.extend(columns.iter().cloned());
    w.write_record(&header)?;
    let mut rows = 0;
    for r in results {
        let seed = r.point.config.seed.to_string();
        let point = r.point.index.to_string();
        for (rep, trace) in r.traces.iter().enumerate() {
            let rep = rep.to_string();
            for row in &trace.rows {
                let mut record = vec![r.strategy.to_string(), point.clone(), seed.clone(), rep.clone()];
                record.extend(row.iter().map(|&v| format_number(v)));
                w.write_record(&record)?;
                rows += 1;
            }
        }
    }
    let out = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok((out, rows))
}

fn render_snapshots(results: &[PointResult]) -> (Vec<u8>, usize) {
    let mut out = String::new();
    let mut lines = 0;
    for r in results {
        for (rep, trace) in r.traces.iter().enumerate() {
            for s in &trace.snapshots {
                out.push_str(&format!("{}\t{}\t{rep}\t{s}\n", r.strategy, r.point.index));
                lines += 1;
            }
        }
    }
    (out.into_bytes(), lines)
}

pub struct RunOutput<'a> {
    pub config_path: &'a Path,
    pub out_dir: &'a Path,
    pub run_file: &'a RunFile,
    pub jobs: Option<usize>,
}

/// Writes every output file and returns their paths. Nothing is written if
/// rendering fails.
pub fn write_outputs(o: &RunOutput, results: &[PointResult]) -> Result<Vec<PathBuf>, CliError> {
    let case = o.run_file.case.as_str();
    let (measures, rows) = render_measures(case, results)?;
    let snapshots = o.run_file.full_trace.then(|| render_snapshots(results));

    std::fs::create_dir_all(o.out_dir)?;
    let mut files = vec![ManifestFile { name: MEASURES_FILE.into(), sha256: sha256_hex(&measures), rows }];
    let mut paths = vec![o.out_dir.join(MEASURES_FILE)];
    std::fs::write(&paths[0], &measures)?;
    if let Some((bytes, lines)) = snapshots {
        let p = o.out_dir.join(SNAPSHOTS_FILE);
        std::fs::write(&p, &bytes)?;
        files.push(ManifestFile { name: SNAPSHOTS_FILE.into(), sha256: sha256_hex(&bytes), rows: lines });
        paths.push(p);
    }

    let manifest = Manifest {
        schema: schema_tag(case),
        version: env!("CARGO_PKG_VERSION"),
        config_path: o.config_path.display().to_string(),
        output_dir: o.out_dir.display().to_string(),
        case,
        config_hash: o.run_file.content_hash()?,
        timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        seed: o.run_file.seed,
        repetitions: o.run_file.repetitions,
        full_trace: o.run_file.full_trace,
        jobs: o.jobs,
        points: results
            .iter()
            .map(|r| ManifestPoint { strategy: r.strategy, index: r.point.index, params: &r.point.config.params })
            .collect(),
        files,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Runtime(e.to_string()))?;
    let p = o.out_dir.join(MANIFEST_FILE);
    std::fs::write(&p, json + "\n")?;
    paths.push(p);
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_number(None), "NA");
        assert_eq!(format_number(Some(0.0)), "0");
        assert_eq!(format_number(Some(-0.0)), "0");
        assert_eq!(format_number(Some(51.0)), "51");
        assert_eq!(format_number(Some(0.1)), "0.1");
        assert_eq!(format_number(Some(1.0 / 3.0)), "0.333333333");
        assert_eq!(format_number(Some(-2.0 / 3.0)), "-0.666666667");
        assert_eq!(format_number(Some(123456.7891234)), "123456.789");
        assert_eq!(format_number(Some(-4.7e-7)), "-4.7e-7");
        assert_eq!(format_number(Some(1.234567891e-5)), "1.23456789e-5");
    }

    #[test]
    fn formatted_values_round_trip_to_nine_digits() {
        for x in [std::f64::consts::PI, 1e-9 / 7.0, 6.02214076e23, -0.000470219, 0.72] {
            let back: f64 = format_number(Some(x)).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-9, "{x} -> {back}");
        }
    }
}
