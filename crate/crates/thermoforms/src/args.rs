//! Command line parsing into a validated [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thermoforms_core::domains::{Axis, Grid};
use thermoforms_core::entropy::EntropyModel;
use thermoforms_core::oracle::Family;

use crate::error::{Error, Result};

/// Environment variable capping the number of scan workers.
pub const THREADS_ENV: &str = "THERMOFORMS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "thermoforms", version, about = "Central-moment forms, symmetric processes and applicability domains of gas models")]
#[command(after_help = "Environment:\n  THERMOFORMS_THREADS  maximum number of scan workers (default: all cores)")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Ideal,
    Vdw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Gaussian,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Entropy model
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Degrees of freedom (> 0)
    #[arg(long, allow_negative_numbers = true, value_parser = positive)]
    n: f64,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// σ₂, σ₃, σ₄ and the state at one point, as JSON
    Forms {
        #[command(flatten)]
        model: ModelArgs,
        /// State point `e,v`
        #[arg(long, allow_hyphen_values = true, value_parser = point)]
        at: [f64; 2],
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of symmetric processes over a (T, v) grid
    Processes {
        #[command(flatten)]
        model: ModelArgs,
        /// `Tmin:Tmax:steps,vmin:vmax:steps`
        #[arg(long, value_parser = grid)]
        grid: Grid,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Trace one symmetric process as a polyline v(e)
    Curve {
        #[command(flatten)]
        model: ModelArgs,
        /// Start point `e,v`
        #[arg(long, allow_hyphen_values = true, value_parser = point)]
        start: [f64; 2],
        /// Root index at the start point, ascending
        #[arg(long, default_value_t = 0)]
        branch: usize,
        /// Step in e; negative steps trace backwards
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-3, value_parser = finite)]
        step: f64,
        /// Length of the traced e-interval
        #[arg(long, default_value_t = 1.0, value_parser = non_negative)]
        max_len: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Definiteness classes, process counts and boundary flags over a (T, v) grid
    Domains {
        #[command(flatten)]
        model: ModelArgs,
        /// Temperature axis `min:max:steps`
        #[arg(long = "T", value_parser = axis)]
        temperature: Axis,
        /// Volume axis `min:max:steps`
        #[arg(long = "v", value_parser = axis)]
        volume: Axis,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Analytic and quadrature central moments of a 1-D exponential family, as JSON
    Oracle {
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Natural parameter λ
        #[arg(long, allow_negative_numbers = true, value_parser = finite)]
        lambda: f64,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What to compute.
#[derive(Debug, Clone)]
pub enum Command {
    Forms { model: EntropyModel, at: [f64; 2] },
    Processes { model: EntropyModel, grid: Grid },
    Curve { model: EntropyModel, start: [f64; 2], branch: usize, step: f64, max_len: f64 },
    Domains { model: EntropyModel, grid: Grid },
    Oracle { family: Family, lambda: f64 },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    /// Always JSON for `forms` and `oracle`.
    pub format: Format,
    /// Worker cap; `None` uses all cores.
    pub threads: Option<usize>,
}

/// Parses `argv` (including the program name). Help and version requests
/// come back as `clap` errors too; `clap::Error::exit` handles both.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let (command, out, format) = match cli.command {
        Cmd::Forms { model, at, out } => (Command::Forms { model: model.build(), at }, out, Format::Json),
        Cmd::Processes { model, grid, out } => {
            (Command::Processes { model: model.build(), grid }, out.out, out.format)
        }
        Cmd::Curve { model, start, branch, step, max_len, out } => (
            Command::Curve { model: model.build(), start, branch, step, max_len },
            out.out,
            out.format,
        ),
        Cmd::Domains { model, temperature, volume, out } => {
            (Command::Domains { model: model.build(), grid: Grid { temperature, volume } }, out.out, out.format)
        }
        Cmd::Oracle { family, lambda, out } => {
            let family = match family {
                FamilyKind::Gaussian => Family::Gaussian,
                FamilyKind::Exponential => Family::Exponential,
            };
            (Command::Oracle { family, lambda }, out, Format::Json)
        }
    };
    Ok(RunConfig { command, out, format, threads: None })
}

impl ModelArgs {
    fn build(&self) -> EntropyModel {
        // `n` was validated by the value parser
        match self.model {
            ModelKind::Ideal => EntropyModel::IdealGas { n: self.n },
            ModelKind::Vdw => EntropyModel::VanDerWaals { n: self.n },
        }
    }
}

/// Reads [`THREADS_ENV`]: unset or empty means all cores.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(Error::Usage(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
        Err(e) => Err(Error::Usage(format!("{THREADS_ENV}: {e}"))),
    }
}

fn number(s: &str) -> std::result::Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))
}

fn finite(s: &str) -> std::result::Result<f64, String> {
    let x = number(s)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let x = finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be > 0, got {x}"))
    }
}

fn non_negative(s: &str) -> std::result::Result<f64, String> {
    let x = finite(s)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("must be >= 0, got {x}"))
    }
}

/// `e,v`
pub fn point(s: &str) -> std::result::Result<[f64; 2], String> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [a, b] => Ok([finite(a)?, finite(b)?]),
        _ => Err(format!("expected `x,y`, got {s:?}")),
    }
}

/// `min:max:steps`
pub fn axis(s: &str) -> std::result::Result<Axis, String> {
    let [min, max, steps] = match s.split(':').collect::<Vec<_>>()[..] {
        [a, b, c] => [a, b, c],
        _ => return Err(format!("expected `min:max:steps`, got {s:?}")),
    };
    let steps = steps.trim().parse::<usize>().map_err(|e| format!("steps {steps:?}: {e}"))?;
    let (min, max) = (finite(min)?, finite(max)?);
    if min >= max {
        return Err(format!("need min < max, got {min}:{max}"));
    }
    Axis::new(min, max, steps).map_err(|e| e.to_string())
}

/// `Tmin:Tmax:steps,vmin:vmax:steps`
pub fn grid(s: &str) -> std::result::Result<Grid, String> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [t, v] => Ok(Grid { temperature: axis(t)?, volume: axis(v)? }),
        _ => Err(format!("expected `Tmin:Tmax:steps,vmin:vmax:steps`, got {s:?}")),
    }
}
