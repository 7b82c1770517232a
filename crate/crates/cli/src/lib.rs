//! Command-line front end: loads a graph document, dispatches to the solvers
//! and emits deterministic tabular or JSON reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use graphpde::{Domain, GraphDocument};

pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_THRESHOLD, EXIT_USAGE};
pub use report::{Format, Report};

/// Exit status plus the rendered report (absent when the run failed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub report: Option<String>,
    pub message: Option<String>,
}

pub fn load_graph(path: &std::path::Path) -> Result<(GraphDocument, Domain), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let doc = GraphDocument::from_json(&text)?;
    let domain = doc.domain()?;
    Ok((doc, domain))
}

fn dispatch(config: &RunConfig) -> Result<(Report, i32), CliError> {
    let (doc, domain) = load_graph(&config.graph)?;
    let report = match &config.command {
        Command::Spectrum => commands::spectrum(&domain)?,
        Command::Schrodinger { times } => commands::schrodinger(&domain, &doc, times)?,
        Command::Wave { times } => commands::wave(&domain, &doc, times)?,
        Command::Nls {
            times,
            p,
            horizon,
            substep,
            tol,
            max_picard_iters,
        } => commands::nls(
            &domain,
            &doc,
            times,
            *p,
            *horizon,
            *substep,
            *tol,
            *max_picard_iters,
        )?,
        Command::GroundState {
            p,
            tol,
            seed,
            max_iters,
        } => commands::ground_state(&domain, &doc, *p, *tol, *seed, *max_iters)?,
        Command::Verify {
            seed,
            trials,
            threshold_scale,
        } => {
            let (report, ok) = commands::verify(&domain, *seed, *trials, *threshold_scale)?;
            return Ok((report, if ok { EXIT_OK } else { EXIT_THRESHOLD }));
        }
    };
    Ok((report, EXIT_OK))
}

/// Runs one validated configuration without touching stdout or the output file.
pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok((report, status)) => Outcome {
            status,
            report: Some(report.render(config.format)),
            message: None,
        },
        Err(e) => Outcome {
            status: e.exit_code(),
            report: None,
            message: Some(format!("error: {e}")),
        },
    }
}

/// Parses `args` (including the program name), runs, and writes the report
/// to the configured destination. Returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = match RunConfig::try_from(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let outcome = run(&config);
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    if let Some(text) = &outcome.report {
        if let Err(e) = emit(config.output.as_deref(), text) {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    }
    outcome.status
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Write {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
