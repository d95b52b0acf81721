//! CSV and JSON writers. Every float is printed with 17 significant digits
//! (`{:.16e}`), so identical inputs give byte-identical files and values
//! round-trip exactly. Negative zero prints as zero. Non-finite numbers are
//! `NaN`/`inf` in CSV and `null` in JSON.

use std::io::{self, Write};

use serde_json::ser::Formatter;
use serde_json::{json, Value};
use thermoforms_core::domains::{sigma2_positive, sigma4_positive, DomainCell, Grid, Scan};
use thermoforms_core::entropy::EntropyModel;
use thermoforms_core::forms::{Forms, SymForm};
use thermoforms_core::oracle::{CentralMoments, NumericMoments};
use thermoforms_core::processes::{CubicCoeffs, ProcessCurve, RootSet, Stop};

use crate::error::Result;

pub const DOMAINS_HEADER: [&str; 8] =
    ["T", "v", "e", "sigma2_class", "sigma4_class", "process_count", "disc", "boundary_flags"];
pub const PROCESSES_HEADER: [&str; 4] = ["T", "v", "root_count", "disc"];
pub const CURVE_HEADER: [&str; 3] = ["e", "v", "T"];

/// Class label for cells outside the model's domain.
pub const INVALID: &str = "invalid";

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Compact JSON with [`num`] formatting for floats.
struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", num(value))
    }
}

/// Writes `value` followed by a newline.
pub fn write_json<W: Write>(mut w: W, value: &Value) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut w, SigDigits);
    serde::Serialize::serialize(value, &mut ser)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn stop_name(stop: Stop) -> &'static str {
    match stop {
        Stop::MaxLength => "max_length",
        Stop::BranchLost => "branch_lost",
        Stop::DomainExit => "domain_exit",
    }
}

fn form<const C: usize>(f: &SymForm<C>) -> Value {
    json!({ "components": f.components.as_slice(), "poly": f.poly_coeffs().as_slice() })
}

fn grid_json(grid: &Grid) -> Value {
    let axis = |a: &thermoforms_core::domains::Axis| json!({ "min": a.min, "max": a.max, "steps": a.steps });
    json!({ "T": axis(&grid.temperature), "v": axis(&grid.volume) })
}

fn model_json(model: &EntropyModel) -> (Value, Value) {
    (json!(model.name()), json!(model.dof()))
}

/// Everything known at one state point. Parts that cannot be computed
/// there (`state`, `sigma4`, the slopes) become `{"error": message}`.
pub fn forms_json(model: &EntropyModel, at: [f64; 2], forms: &Forms, roots: &Result<RootSet, String>) -> Value {
    let [e, v] = at;
    let (name, n) = model_json(model);
    let state = match model.state(e, v) {
        Ok(s) => json!({ "s": s.s, "T": s.temperature, "p": s.pressure }),
        Err(err) => json!({ "error": err.to_string() }),
    };
    let mut sigma2 = form(&forms.sigma2);
    sigma2["det"] = json!(forms.sigma2.det());
    sigma2["class"] = json!(sigma2_positive(&forms.sigma2).as_str());
    let sigma4 = match &forms.sigma4 {
        Ok(s4) => {
            let mut v = form(s4);
            v["class"] = json!(sigma4_positive(s4).as_str());
            v
        }
        Err(err) => json!({ "error": err.to_string() }),
    };
    let cubic = CubicCoeffs::from_sigma3(&forms.sigma3);
    let processes = match roots {
        Ok(r) => json!({
            "cubic": [cubic.c3, cubic.c2, cubic.c1, cubic.c0],
            "discriminant": r.discriminant,
            "count": thermoforms_core::processes::ProcessCount::from_discriminant(&cubic).as_str(),
            "slopes": r.roots,
        }),
        Err(err) => json!({ "cubic": [cubic.c3, cubic.c2, cubic.c1, cubic.c0], "error": err }),
    };
    json!({
        "model": name,
        "n": n,
        "e": e,
        "v": v,
        "state": state,
        "sigma2": sigma2,
        "sigma3": form(&forms.sigma3),
        "sigma4": sigma4,
        "processes": processes,
    })
}

fn moments_json(m: &CentralMoments) -> Value {
    json!({ "sigma2": m.sigma2, "sigma3": m.sigma3, "sigma4": m.sigma4 })
}

pub fn oracle_json(family: &str, lambda: f64, analytic: &CentralMoments, numeric: &NumericMoments, residual: f64) -> Value {
    let mut num = moments_json(&numeric.moments);
    num["mean"] = json!(numeric.mean);
    num["normalization"] = json!(numeric.normalization);
    json!({
        "family": family,
        "lambda": lambda,
        "analytic": moments_json(analytic),
        "numeric": num,
        "info_gain_residual": residual,
    })
}

fn sigma2_label(c: &DomainCell) -> &'static str {
    c.class.map_or(INVALID, |k| k.sigma2.as_str())
}

fn sigma4_label(c: &DomainCell) -> &'static str {
    c.class.map_or(INVALID, |k| k.sigma4.as_str())
}

fn count_label(c: &DomainCell) -> &'static str {
    c.class.map_or(INVALID, |k| k.processes.as_str())
}

fn disc(c: &DomainCell) -> f64 {
    c.class.map_or(f64::NAN, |k| k.discriminant)
}

pub fn domains_csv<W: Write>(w: W, scan: &Scan) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(DOMAINS_HEADER)?;
    for c in &scan.cells {
        out.write_record([
            num(c.temperature).as_str(),
            &num(c.volume),
            &num(c.energy),
            sigma2_label(c),
            sigma4_label(c),
            count_label(c),
            &num(disc(c)),
            c.boundary.label(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn domains_json(model: &EntropyModel, scan: &Scan) -> Value {
    let (name, n) = model_json(model);
    let cells: Vec<Value> = scan
        .cells
        .iter()
        .map(|c| {
            json!({
                "T": c.temperature,
                "v": c.volume,
                "e": c.energy,
                "sigma2_class": sigma2_label(c),
                "sigma4_class": sigma4_label(c),
                "process_count": count_label(c),
                "disc": disc(c),
                "boundary_flags": c.boundary.label(),
            })
        })
        .collect();
    json!({ "model": name, "n": n, "grid": grid_json(&scan.grid), "cells": cells })
}

pub fn processes_csv<W: Write>(w: W, scan: &Scan) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(PROCESSES_HEADER)?;
    for c in &scan.cells {
        out.write_record([num(c.temperature).as_str(), &num(c.volume), count_label(c), &num(disc(c))])?;
    }
    out.flush()?;
    Ok(())
}

pub fn processes_json(model: &EntropyModel, scan: &Scan) -> Value {
    let (name, n) = model_json(model);
    let cells: Vec<Value> = scan
        .cells
        .iter()
        .map(|c| json!({ "T": c.temperature, "v": c.volume, "root_count": count_label(c), "disc": disc(c) }))
        .collect();
    json!({ "model": name, "n": n, "grid": grid_json(&scan.grid), "cells": cells })
}

fn temperature(model: &EntropyModel, p: [f64; 2]) -> f64 {
    model.state(p[0], p[1]).map_or(f64::NAN, |s| s.temperature)
}

pub fn curve_csv<W: Write>(w: W, model: &EntropyModel, curve: &ProcessCurve) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CURVE_HEADER)?;
    for &p in &curve.points {
        out.write_record([num(p[0]), num(p[1]), num(temperature(model, p))])?;
    }
    out.flush()?;
    Ok(())
}

pub fn curve_json(model: &EntropyModel, branch: usize, curve: &ProcessCurve) -> Value {
    let (name, n) = model_json(model);
    let points: Vec<Value> = curve
        .points
        .iter()
        .map(|&p| json!({ "e": p[0], "v": p[1], "T": temperature(model, p) }))
        .collect();
    json!({ "model": name, "n": n, "branch": branch, "stop": stop_name(curve.stop), "points": points })
}
