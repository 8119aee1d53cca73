use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use msfs_cli::{run_experiment, verify, Catalog, CliError, Kind, Table};

#[derive(Parser)]
#[command(name = "msfs", version, about = "Run and verify multi-scale feedback system experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment file and write measures.csv and manifest.json.
    Run {
        /// Experiment file (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Output directory, created if missing.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads for repetitions (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Overrides the seed of the experiment file.
        #[arg(long)]
        seed: Option<u64>,
        /// Keep model state snapshots (snapshots.txt).
        #[arg(long)]
        full_trace: bool,
    },
    /// Compare a results CSV with a golden CSV cell by cell.
    Verify {
        /// Reference measures CSV.
        #[arg(long)]
        golden: PathBuf,
        /// Measures CSV to check, with the same schema tag and header.
        #[arg(long)]
        results: PathBuf,
        /// Largest accepted absolute difference for numeric cells.
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        /// Also write every cell's outcome to this CSV file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List case studies, strategies and parameters.
    List,
}

fn list() {
    for case in Catalog::new().cases() {
        println!("{}", case.id);
        println!("  strategies: {}", case.strategies.join(", "));
        let params: Vec<String> = case
            .params
            .iter()
            .map(|p| {
                let kind = match p.kind {
                    Kind::Real => "real",
                    Kind::Count => "count",
                    Kind::Flag => "flag",
                };
                format!("{} ({kind})", p.name)
            })
            .collect();
        println!("  params: {}", params.join(", "));
        println!("  default horizon: {}", case.default_horizon);
    }
}

fn run_verify(golden: PathBuf, results: PathBuf, tolerance: f64, report: Option<PathBuf>) -> Result<(), CliError> {
    let g = Table::load(&golden)?;
    let r = Table::load(&results)?;
    let rep = verify(&g, &r, tolerance)?;
    if let Some(path) = report {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path)?;
        w.write_record(["row", "column", "golden", "result", "abs_diff", "status"])?;
        for c in &rep.cells {
            let diff = c.diff.map(|d| d.to_string()).unwrap_or_default();
            let status = if c.pass { "pass" } else { "fail" };
            w.write_record([&c.row.to_string(), &c.column, &c.golden, &c.result, &diff, status])?;
        }
        w.flush()?;
    }
    for c in rep.failures() {
        let diff = c.diff.map(|d| format!(" |diff| {d:e}")).unwrap_or_default();
        println!("FAIL row {} column {}: golden {} result {}{diff}", c.row, c.column, c.golden, c.result);
    }
    if let Some((g, r)) = rep.row_count {
        println!("FAIL row count: golden {g} result {r}");
    }
    let failed = rep.failures().count();
    println!("{} cells compared, {failed} failed (tolerance {tolerance})", rep.cells.len());
    if rep.passed() {
        Ok(())
    } else {
        Err(CliError::Mismatch(failed + rep.row_count.is_some() as usize, rep.cells.len()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, out, jobs, seed, full_trace } => run_experiment(&config, &out, seed, full_trace, jobs)
            .map(|paths| {
                for p in paths {
                    println!("wrote {}", p.display());
                }
            }),
        Command::Verify { golden, results, tolerance, report } => run_verify(golden, results, tolerance, report),
        Command::List => {
            list();
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
