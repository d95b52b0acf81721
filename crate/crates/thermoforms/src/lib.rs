//! File formats, parallel grid scans and the command line front end for
//! [`thermoforms_core`].
//!
//! Scans split the temperature rows over a rayon pool. Each row is
//! classified independently and rows are reassembled in order, so the
//! output does not depend on the number of workers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use thermoforms_core::domains::{scan_rows, Grid, Scan};
use thermoforms_core::entropy::EntropyModel;
use thermoforms_core::forms::forms;
use thermoforms_core::processes::{integrate_process, solve_cubic, CubicCoeffs};
use thermoforms_core::quadrature::Tolerance;

pub mod args;
pub mod error;
pub mod output;

pub use args::{parse_args, threads_from_env, Command, Format, RunConfig};
pub use error::{Error, Result};

/// Classifies every cell of `grid`, rows in parallel on at most `threads`
/// workers (`None`: all cores).
pub fn scan(model: &EntropyModel, grid: &Grid, threads: Option<usize>) -> Result<Scan> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?;
    let rows: Vec<_> = pool.install(|| {
        (0..grid.temperature.steps).into_par_iter().map(|i| scan_rows(model, grid, i..i + 1)).collect()
    });
    Ok(Scan::from_cells(*grid, rows.concat()))
}

fn open(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Runs one subcommand and writes its output. Notes that are not part of
/// the data (curve stop reasons) go to standard error.
pub fn run(config: &RunConfig) -> Result<()> {
    let out = config.out.as_deref();
    match &config.command {
        Command::Forms { model, at } => {
            let [e, v] = *at;
            let f = forms(model, e, v).map_err(Error::at(format!("forms at (e, v) = ({e}, {v})")))?;
            let roots = solve_cubic(&CubicCoeffs::from_sigma3(&f.sigma3)).map_err(|err| err.to_string());
            output::write_json(open(out)?, &output::forms_json(model, *at, &f, &roots))
        }
        Command::Processes { model, grid } => {
            let s = scan(model, grid, config.threads)?;
            match config.format {
                Format::Csv => output::processes_csv(open(out)?, &s),
                Format::Json => output::write_json(open(out)?, &output::processes_json(model, &s)),
            }
        }
        Command::Domains { model, grid } => {
            let s = scan(model, grid, config.threads)?;
            match config.format {
                Format::Csv => output::domains_csv(open(out)?, &s),
                Format::Json => output::write_json(open(out)?, &output::domains_json(model, &s)),
            }
        }
        Command::Curve { model, start, branch, step, max_len } => {
            let curve = integrate_process(model, *start, *branch, *step, *max_len)
                .map_err(Error::at(format!("curve from (e, v) = ({}, {})", start[0], start[1])))?;
            let last = curve.points[curve.points.len() - 1];
            eprintln!(
                "stopped: {} after {} points, last (e, v) = ({}, {})",
                output::stop_name(curve.stop),
                curve.points.len(),
                last[0],
                last[1]
            );
            match config.format {
                Format::Csv => output::curve_csv(open(out)?, model, &curve),
                Format::Json => output::write_json(open(out)?, &output::curve_json(model, *branch, &curve)),
            }
        }
        Command::Oracle { family, lambda } => {
            let at = || format!("{} family at lambda = {lambda}", family.name());
            let analytic = family.central_moments_analytic(*lambda).map_err(Error::at(at()))?;
            let numeric = family.central_moments_numeric(*lambda, &Tolerance::default()).map_err(Error::at(at()))?;
            let residual = family.info_gain_check(*lambda).map_err(Error::at(at()))?;
            let value = output::oracle_json(family.name(), *lambda, &analytic, &numeric, residual);
            output::write_json(open(out)?, &value)
        }
    }
}
