use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lcwlab_cli::analyze::analyze;
use lcwlab_cli::error::CliError;
use lcwlab_cli::input::{parse_input, InputDoc, ParseOptions};
use lcwlab_cli::scenario::run_scenario;
use lcwlab_cli::sweep::{run_sweep, Predicate, SweepSpec};

#[derive(Parser)]
#[command(
    name = "lcwlab",
    version,
    about = "Exact analysis of limiting Carleman weights and eigenflags"
)]
struct Cli {
    /// Accept Lie brackets that violate Jacobi (testing only).
    #[arg(long, global = true, hide = true)]
    skip_jacobi: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a lie_algebra or ckf document and print the report.
    Analyze {
        file: PathBuf,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify a conformal Killing field document.
    ClassifyCkf { file: PathBuf },
    /// Run a built-in fixture against its golden table.
    Scenario { name: String },
    /// Scan diagonal unimodular brackets over a rational grid.
    Sweep {
        /// Range `lo:hi:step` or a single value, e.g. `-6:6:1` or `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
        #[arg(long, allow_hyphen_values = true)]
        l3: String,
        #[arg(long, value_enum)]
        predicate: Predicate,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long, env = "LCWLAB_WORKERS")]
        workers: Option<usize>,
        /// Findings file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
}

fn write(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = ParseOptions {
        skip_jacobi: cli.skip_jacobi,
    };
    match cli.command {
        Command::Analyze { file, json } => {
            let report = analyze(&parse_input(&file, opts)?)?;
            print!("{}", report.to_text());
            if let Some(out) = json {
                write(&out, &report.to_json())?;
            }
        }
        Command::ClassifyCkf { file } => {
            let doc = parse_input(&file, opts)?;
            if !matches!(doc, InputDoc::Ckf(_)) {
                return Err(CliError::Validation(
                    "classify-ckf expects a document of kind \"ckf\"".into(),
                ));
            }
            print!("{}", analyze(&doc)?.to_text());
        }
        Command::Scenario { name } => {
            let outcome = run_scenario(&name)?;
            print!("{}", outcome.report.to_text());
            if !outcome.passed() {
                for m in &outcome.mismatches {
                    eprintln!("golden mismatch: {m}");
                }
                return Err(CliError::GoldenMismatch(outcome.mismatches.len()));
            }
        }
        Command::Sweep {
            l1,
            l2,
            l3,
            predicate,
            workers,
            out,
        } => {
            let spec = SweepSpec::parse(&l1, &l2, &l3, predicate)?;
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let findings = run_sweep(&spec, workers)?;
            write(&out, &findings.to_json())?;
            println!(
                "{} of {} grid points match {}",
                findings.matches.len(),
                findings.points,
                predicate.name()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
