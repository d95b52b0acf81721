//! Symmetric processes: directions `X = ∂e + q ∂v` with `σ₃(X, X, X) = 0`.
//!
//! The slope `q` solves the cubic
//! `S_vvv q³ + 3 S_evv q² + 3 S_eev q + S_eee = 0`. Where it has three real
//! roots a state point carries three symmetric processes, otherwise one.
//! [`integrate_process`] traces a single branch as a graph `v(e)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::entropy::EntropyModel;
use crate::forms::{sigma3_from, SymForm3};
use crate::math;
use crate::{Error, Result};

/// Below this (relative to the largest coefficient) the cubic term is
/// dropped and the equation solved as a quadratic or linear one.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Relative discriminant band treated as a root-count boundary.
pub const DISCRIMINANT_TOL: f64 = 1e-10;
const ZERO_COEFFS: f64 = 1e-300;

/// `c3 q³ + c2 q² + c1 q + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoeffs {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicCoeffs {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        Self { c3, c2, c1, c0 }
    }

    /// Coefficients of `σ₃((1, q)³)`.
    pub fn from_sigma3(s3: &SymForm3) -> Self {
        let [c0, c1, c2, c3] = s3.poly_coeffs();
        Self { c3, c2, c1, c0 }
    }

    pub fn scale(&self) -> f64 {
        math::max_abs(&[self.c3, self.c2, self.c1, self.c0])
    }

    pub fn eval(&self, q: f64) -> f64 {
        ((self.c3 * q + self.c2) * q + self.c1) * q + self.c0
    }

    fn slope(&self, q: f64) -> f64 {
        (3.0 * self.c3 * q + 2.0 * self.c2) * q + self.c1
    }

    /// `18abcd - 4b³d + b²c² - 4ac³ - 27a²d²`.
    pub fn discriminant(&self) -> f64 {
        let (a, b, c, d) = (self.c3, self.c2, self.c1, self.c0);
        18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c - 27.0 * a * a * d * d
    }

    fn normalized(&self) -> Self {
        let s = self.scale();
        Self::new(self.c3 / s, self.c2 / s, self.c1 / s, self.c0 / s)
    }

    /// Monic cubic in `t = q / r` with `r = max_k (|c_k| / |c3|)^(1/(3-k))`,
    /// a bound on the root magnitudes, so every coefficient lies in
    /// `[-1, 1]` and one has modulus 1. Returns the cubic and `r`, or
    /// `None` when `c3` or all lower coefficients vanish.
    fn balanced(&self) -> Option<(Self, f64)> {
        let a = self.c3;
        let lower = [(self.c2, 1.0), (self.c1, 2.0), (self.c0, 3.0)];
        let r = lower.iter().map(|&(c, k)| math::powf(math::abs(c / a), 1.0 / k)).fold(0.0, f64::max);
        if a == 0.0 || !(r > 0.0) || !r.is_finite() {
            return None;
        }
        let b = Self::new(1.0, self.c2 / (a * r), self.c1 / (a * r * r), self.c0 / (a * r * r * r));
        Some((b, r))
    }

    /// Discriminant of the [`balanced`](Self::balanced) cubic; same sign as
    /// [`discriminant`](Self::discriminant), comparable across scales.
    pub fn balanced_discriminant(&self) -> Option<f64> {
        self.balanced().map(|(b, _)| b.discriminant())
    }
}

/// Real roots of a cubic, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<f64>,
    /// Discriminant of the unnormalized coefficients.
    pub discriminant: f64,
    /// The cubic term was negligible; the roots come from a lower degree.
    pub degenerate: bool,
}

/// Number of symmetric processes at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProcessCount {
    One,
    Three,
    /// Balanced discriminant within [`DISCRIMINANT_TOL`] of zero: a double
    /// root, or a root escaping to infinity.
    Boundary,
}

impl ProcessCount {
    pub fn from_discriminant(c: &CubicCoeffs) -> Self {
        let n = c.normalized();
        let d = match n.balanced_discriminant() {
            Some(d) if c.scale() > ZERO_COEFFS && math::abs(n.c3) >= DEGENERATE_TOL => d,
            _ => return Self::Boundary,
        };
        if math::abs(d) <= DISCRIMINANT_TOL {
            Self::Boundary
        } else if d > 0.0 {
            Self::Three
        } else {
            Self::One
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::One => "1",
            Self::Three => "3",
            Self::Boundary => "boundary",
        }
    }
}

pub fn cubic_at(model: &EntropyModel, e: f64, v: f64) -> Result<CubicCoeffs> {
    Ok(CubicCoeffs::from_sigma3(&sigma3_from(&model.derivatives(e, v)?)))
}

pub fn root_count(model: &EntropyModel, e: f64, v: f64) -> Result<ProcessCount> {
    Ok(ProcessCount::from_discriminant(&cubic_at(model, e, v)?))
}

pub fn symmetric_slopes(model: &EntropyModel, e: f64, v: f64) -> Result<RootSet> {
    solve_cubic(&cubic_at(model, e, v)?)
}

fn polish(c: &CubicCoeffs, q: f64) -> f64 {
    let d = c.slope(q);
    if d != 0.0 && d.is_finite() {
        let next = q - c.eval(q) / d;
        if next.is_finite() {
            return next;
        }
    }
    q
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if math::abs(a) < DEGENERATE_TOL {
        return if math::abs(b) < DEGENERATE_TOL { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    // avoid cancellation in -b ± sqrt(disc)
    let s = math::sqrt(disc);
    let t = -0.5 * (b + if b >= 0.0 { s } else { -s });
    let mut r = vec![t / a, c / t];
    r.sort_by(f64::total_cmp);
    r
}

/// Real roots by the trigonometric (three roots) or Cardano (one root)
/// formula on the balanced, depressed cubic, each refined by one Newton
/// step.
pub fn solve_cubic(c: &CubicCoeffs) -> Result<RootSet> {
    let scale = c.scale();
    if !(scale > ZERO_COEFFS) {
        return Err(Error::AllZero);
    }
    let discriminant = c.discriminant();
    let n = c.normalized();
    if math::abs(n.c3) < DEGENERATE_TOL {
        let roots = quadratic_roots(n.c2, n.c1, n.c0).into_iter().map(|q| polish(&n, q)).collect();
        return Ok(RootSet { roots, discriminant, degenerate: true });
    }
    let Some((bal, r0)) = n.balanced() else {
        // c3 != 0 but c2 = c1 = c0 = 0: triple root at zero
        return Ok(RootSet { roots: vec![0.0], discriminant, degenerate: false });
    };
    let (a, b, cc, d) = (bal.c3, bal.c2, bal.c1, bal.c0);
    let shift = -b / (3.0 * a);
    let p = (3.0 * a * cc - b * b) / (3.0 * a * a);
    let r = (2.0 * b * b * b - 9.0 * a * b * cc + 27.0 * a * a * d) / (27.0 * a * a * a);
    let nd = bal.discriminant();

    let mut roots: Vec<f64> = if nd > DISCRIMINANT_TOL {
        let m = 2.0 * math::sqrt(-p / 3.0);
        let arg = (3.0 * r / (2.0 * p) * math::sqrt(-3.0 / p)).clamp(-1.0, 1.0);
        let theta = math::acos(arg) / 3.0;
        (0..3).map(|k| m * math::cos(theta - 2.0 * PI * k as f64 / 3.0) + shift).collect()
    } else if nd < -DISCRIMINANT_TOL {
        let root = math::sqrt((r * r / 4.0 + p * p * p / 27.0).max(0.0));
        let big = -(r / 2.0 + if r >= 0.0 { root } else { -root });
        let u = math::cbrt(big);
        let w = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        vec![u + w + shift]
    } else if math::abs(p) <= DISCRIMINANT_TOL {
        vec![shift]
    } else {
        vec![3.0 * r / p + shift, -3.0 * r / (2.0 * p) + shift]
    };
    for t in roots.iter_mut() {
        *t *= r0;
    }
    for q in roots.iter_mut() {
        *q = polish(&n, *q);
    }
    roots.sort_by(f64::total_cmp);
    Ok(RootSet { roots, discriminant, degenerate: false })
}

/// Why curve tracing stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    MaxLength,
    /// The number of real roots changed, so the tracked branch may have
    /// merged with another one.
    BranchLost,
    DomainExit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessCurve {
    /// `(e, v)` vertices, starting at the start point.
    pub points: Vec<[f64; 2]>,
    pub stop: Stop,
}

struct Tracker<'a> {
    model: &'a EntropyModel,
    roots: usize,
}

impl Tracker<'_> {
    /// Root nearest `near` at `(e, v)`, or the reason tracing must stop.
    fn slope(&self, e: f64, v: f64, near: f64) -> core::result::Result<f64, Stop> {
        let set = symmetric_slopes(self.model, e, v).map_err(|_| Stop::DomainExit)?;
        if set.roots.len() != self.roots {
            return Err(Stop::BranchLost);
        }
        let best = set
            .roots
            .iter()
            .copied()
            .min_by(|a, b| math::abs(a - near).total_cmp(&math::abs(b - near)))
            .ok_or(Stop::BranchLost)?;
        Ok(best)
    }
}

/// Traces the symmetric process through `start` along branch `branch`
/// (index into the ascending roots at `start`), using classic RK4 on
/// `dv/de = q(e, v)` with fixed step `step` in `e` (negative steps go
/// backwards) until `|e - e₀|` reaches `max_len`.
///
/// At every stage the root closest to the previous slope is taken, so the
/// branch survives roots crossing in sorted order.
pub fn integrate_process(
    model: &EntropyModel,
    start: [f64; 2],
    branch: usize,
    step: f64,
    max_len: f64,
) -> Result<ProcessCurve> {
    let [e0, v0] = start;
    let set = symmetric_slopes(model, e0, v0)?;
    let Some(&q0) = set.roots.get(branch) else {
        return Err(Error::NoSuchBranch { branch, available: set.roots.len() });
    };
    let mut points = vec![start];
    if step == 0.0 || !(max_len > 0.0) {
        return Ok(ProcessCurve { points, stop: Stop::MaxLength });
    }
    let tracker = Tracker { model, roots: set.roots.len() };
    let h_abs = math::abs(step);
    let dir = if step > 0.0 { 1.0 } else { -1.0 };
    let (mut e, mut v, mut q) = (e0, v0, q0);
    let mut steps_taken = 0u64;
    loop {
        let travelled = steps_taken as f64 * h_abs;
        let remaining = max_len - travelled;
        if remaining <= 1e-12 * max_len {
            return Ok(ProcessCurve { points, stop: Stop::MaxLength });
        }
        let h = dir * h_abs.min(remaining);
        let stage = || -> core::result::Result<(f64, f64, f64), Stop> {
            let k1 = tracker.slope(e, v, q)?;
            let k2 = tracker.slope(e + 0.5 * h, v + 0.5 * h * k1, k1)?;
            let k3 = tracker.slope(e + 0.5 * h, v + 0.5 * h * k2, k2)?;
            let k4 = tracker.slope(e + h, v + h * k3, k3)?;
            let (en, vn) = (e + h, v + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0);
            let qn = tracker.slope(en, vn, k4)?;
            Ok((en, vn, qn))
        };
        match stage() {
            Ok((en, vn, qn)) => {
                (e, v, q) = (en, vn, qn);
                points.push([e, v]);
                steps_taken += 1;
            }
            Err(stop) => return Ok(ProcessCurve { points, stop }),
        }
    }
}
