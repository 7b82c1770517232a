//! Command-line surface and the validated [`RunConfig`] it produces.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "graphpde",
    version,
    about = "Schrödinger, wave and NLS equations on finite graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Graph document (JSON)
    pub graph: PathBuf,
    /// Write the report here instead of standard output
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args, Clone, Default)]
pub struct TimeArgs {
    /// Explicit comma-separated sample times; overrides --t-max/--samples
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub times: Option<Vec<f64>>,
    /// Last sample time of a uniform grid starting at 0
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of grid intervals (the grid has N+1 points)
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Eigenvalues and eigenvectors of the Dirichlet Laplacian
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Linear Schrödinger trajectory from the document's `initial` data
    Schrodinger {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Wave trajectory from `initial` and (optional, default zero) `initial_velocity`
    Wave {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Nonlinear Schrödinger trajectory via Duhamel/Picard
    Nls {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        time: TimeArgs,
        /// Nonlinearity exponent, > 1
        #[arg(long, default_value_t = 3.0)]
        p: f64,
        /// Horizon T (defaults to the last sample time)
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = graphpde::nonlinear::DEFAULT_SUBSTEP)]
        substep: f64,
        /// Picard tolerance
        #[arg(long, default_value_t = graphpde::nonlinear::DEFAULT_PICARD_TOL)]
        tol: f64,
        #[arg(long, default_value_t = graphpde::nonlinear::DEFAULT_MAX_PICARD_ITERS)]
        max_picard_iters: usize,
    },
    /// Positive ground state on the Nehari manifold
    GroundState {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 3.0)]
        p: f64,
        #[arg(long, default_value_t = graphpde::nonlinear::ground_state::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = graphpde::nonlinear::ground_state::DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
    /// Check the calculus, spectral and conservation invariants on seeded random data
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per check
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Multiplier applied to every residual threshold
        #[arg(long, default_value_t = 1.0)]
        threshold_scale: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum,
    Schrodinger {
        times: Vec<f64>,
    },
    Wave {
        times: Vec<f64>,
    },
    Nls {
        times: Vec<f64>,
        p: f64,
        horizon: f64,
        substep: f64,
        tol: f64,
        max_picard_iters: usize,
    },
    GroundState {
        p: f64,
        tol: f64,
        seed: u64,
        max_iters: usize,
    },
    Verify {
        seed: u64,
        trials: usize,
        threshold_scale: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Schrodinger { .. } => "schrodinger",
            Command::Wave { .. } => "wave",
            Command::Nls { .. } => "nls",
            Command::GroundState { .. } => "ground-state",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub graph: PathBuf,
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Expands the time flags: `--times` wins; otherwise `--t-max X --samples N`
/// gives `N+1` uniform points from 0 to `X` inclusive.
pub fn resolve_times(args: &TimeArgs) -> Result<Vec<f64>, CliError> {
    let times = match (&args.times, args.t_max, args.samples) {
        (Some(list), _, _) => list.clone(),
        (None, Some(t_max), Some(n)) => {
            if n == 0 {
                return Err(invalid("--samples must be at least 1"));
            }
            (0..=n)
                .map(|k| {
                    if k == n {
                        t_max
                    } else {
                        t_max * k as f64 / n as f64
                    }
                })
                .collect()
        }
        (None, Some(_), None) => return Err(invalid("--t-max requires --samples")),
        (None, None, Some(_)) => return Err(invalid("--samples requires --t-max")),
        (None, None, None) => {
            return Err(invalid(
                "sample times required: --times or --t-max with --samples",
            ))
        }
    };
    if times.is_empty() {
        return Err(invalid("empty time list"));
    }
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(invalid(format!("non-finite sample time {t}")));
    }
    Ok(times)
}

fn positive(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let (common, command) = match cli.command {
            CommandArgs::Spectrum { common } => (common, Command::Spectrum),
            CommandArgs::Schrodinger { common, time } => (
                common,
                Command::Schrodinger {
                    times: resolve_times(&time)?,
                },
            ),
            CommandArgs::Wave { common, time } => (
                common,
                Command::Wave {
                    times: resolve_times(&time)?,
                },
            ),
            CommandArgs::Nls {
                common,
                time,
                p,
                horizon,
                substep,
                tol,
                max_picard_iters,
            } => {
                let times = resolve_times(&time)?;
                if times.iter().any(|&t| t < 0.0) || times.windows(2).any(|w| w[1] < w[0]) {
                    return Err(invalid(
                        "nls sample times must be non-negative and ascending",
                    ));
                }
                let last = *times.last().expect("nonempty");
                let horizon = horizon.unwrap_or(last);
                if !(p.is_finite() && p > 1.0) {
                    return Err(invalid(format!("--p must exceed 1, got {p}")));
                }
                positive("--horizon", horizon)?;
                positive("--substep", substep)?;
                positive("--tol", tol)?;
                if last > horizon {
                    return Err(invalid(format!(
                        "sample time {last} beyond horizon {horizon}"
                    )));
                }
                if max_picard_iters == 0 {
                    return Err(invalid("--max-picard-iters must be at least 1"));
                }
                (
                    common,
                    Command::Nls {
                        times,
                        p,
                        horizon,
                        substep,
                        tol,
                        max_picard_iters,
                    },
                )
            }
            CommandArgs::GroundState {
                common,
                p,
                tol,
                seed,
                max_iters,
            } => {
                if !(p.is_finite() && p > 1.0) {
                    return Err(invalid(format!("--p must exceed 1, got {p}")));
                }
                positive("--tol", tol)?;
                if max_iters == 0 {
                    return Err(invalid("--max-iters must be at least 1"));
                }
                (
                    common,
                    Command::GroundState {
                        p,
                        tol,
                        seed,
                        max_iters,
                    },
                )
            }
            CommandArgs::Verify {
                common,
                seed,
                trials,
                threshold_scale,
            } => {
                if trials == 0 {
                    return Err(invalid("--trials must be at least 1"));
                }
                if !(threshold_scale.is_finite() && threshold_scale >= 0.0) {
                    return Err(invalid("--threshold-scale must be finite and non-negative"));
                }
                (
                    common,
                    Command::Verify {
                        seed,
                        trials,
                        threshold_scale,
                    },
                )
            }
        };
        Ok(RunConfig {
            command,
            graph: common.graph,
            output: common.output,
            format: common.format,
        })
    }
}
