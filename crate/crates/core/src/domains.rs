//! Where are the even forms positive? Definiteness tests for `σ₂` and `σ₄`
//! and row-major `(T, v)` grid scans.
//!
//! A state is *applicable* when both `σ₂` and `σ₄` are positive definite.
//! Scans also record the number of symmetric processes at each cell and
//! flag cells whose class differs from a 4-neighbour, which traces the
//! boundary curves without any curve fitting.

use alloc::vec::Vec;
use core::ops::Range as IndexRange;

use crate::entropy::EntropyModel;
use crate::forms::{Forms, SymForm2, SymForm4};
use crate::math;
use crate::poly::{Poly, STURM_TOL};
pub use crate::grid::{Axis, Grid};
use crate::processes::{CubicCoeffs, ProcessCount};

/// Relative tolerance for the axis values of `σ₄` and the leading
/// coefficient of `g(t) = σ₄((t, 1)⁴)`.
pub const SIGMA4_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma2Class {
    PositiveDefinite,
    Degenerate,
    IndefiniteOrNegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma4Class {
    PositiveDefinite,
    Degenerate,
    NotPositive,
    /// `σ₂` is degenerate, where the `σ₄` formula has a pole.
    UndefinedPole,
}

impl Sigma2Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::PositiveDefinite => "positive_definite",
            Self::Degenerate => "degenerate",
            Self::IndefiniteOrNegative => "indefinite_or_negative",
        }
    }
}

impl Sigma4Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::PositiveDefinite => "positive_definite",
            Self::Degenerate => "degenerate",
            Self::NotPositive => "not_positive",
            Self::UndefinedPole => "undefined_pole",
        }
    }
}

/// Sylvester's criterion with a relative degeneracy band on the
/// determinant.
pub fn sigma2_positive(form: &SymForm2) -> Sigma2Class {
    if form.is_degenerate() {
        Sigma2Class::Degenerate
    } else if form.components[0] > 0.0 && form.det() > 0.0 {
        Sigma2Class::PositiveDefinite
    } else {
        Sigma2Class::IndefiniteOrNegative
    }
}

/// Positive definite iff `σ₄((1, 0)⁴) > 0`, `σ₄((0, 1)⁴) > 0` and
/// `g(t) = σ₄((t, 1)⁴)` has no real root (Sturm count).
///
/// Definiteness does not change under `X ↦ (αx₁, βx₂)`, so the form is
/// first rescaled to equal axis values; the tolerance bands then do not
/// depend on the units of `e` and `v`. Forms vanishing along an axis, to
/// tolerance, are degenerate.
pub fn sigma4_positive(form: &SymForm4) -> Sigma4Class {
    let p = form.poly_coeffs();
    if p.iter().any(|c| !c.is_finite()) {
        return Sigma4Class::NotPositive;
    }
    let scale = math::max_abs(&p);
    if scale == 0.0 {
        return Sigma4Class::Degenerate;
    }
    // g(t) = p0 t⁴ + p1 t³ + p2 t² + p3 t + p4
    let (lead, tail) = (p[0], p[4]);
    if !(lead > 0.0 && tail > 0.0) {
        return if lead < -SIGMA4_TOL * scale || tail < -SIGMA4_TOL * scale {
            Sigma4Class::NotPositive
        } else {
            Sigma4Class::Degenerate
        };
    }
    // x₁ = α y₁ with α⁴ = p4 / p0 makes both axis values p4
    let alpha = math::powf(tail / lead, 0.25);
    let mut b = [0.0; 5];
    for (k, c) in b.iter_mut().enumerate() {
        *c = p[k] * math::powi(alpha, 4 - k as i32);
    }
    b[0] = tail;
    let scale = math::max_abs(&b);
    if tail <= SIGMA4_TOL * scale {
        return Sigma4Class::Degenerate;
    }
    let g = Poly::new(&b, SIGMA4_TOL);
    if g.count_real_roots(STURM_TOL) > 0 {
        Sigma4Class::NotPositive
    } else {
        Sigma4Class::PositiveDefinite
    }
}

/// Bit set of classifications that differ from at least one valid
/// 4-neighbour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct BoundaryFlags(u8);

impl BoundaryFlags {
    pub const SIGMA2: Self = Self(1);
    pub const SIGMA4: Self = Self(2);
    pub const PROCESSES: Self = Self(4);

    pub fn contains(&self, other: Self) -> bool {
        self.0 & other.0 == other.0 && other.0 != 0
    }

    pub fn insert(&mut self, other: Self) {
        self.0 |= other.0;
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn bits(&self) -> u8 {
        self.0
    }

    /// `s2|s4|pc`, or `none`.
    pub fn label(&self) -> &'static str {
        const LABELS: [&str; 8] = ["none", "s2", "s4", "s2|s4", "pc", "s2|pc", "s4|pc", "s2|s4|pc"];
        LABELS[self.0 as usize & 7]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellClass {
    pub sigma2: Sigma2Class,
    pub sigma4: Sigma4Class,
    pub processes: ProcessCount,
    /// Discriminant of the symmetric-process cubic.
    pub discriminant: f64,
}

impl CellClass {
    pub fn is_applicable(&self) -> bool {
        self.sigma2 == Sigma2Class::PositiveDefinite && self.sigma4 == Sigma4Class::PositiveDefinite
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainCell {
    pub temperature: f64,
    pub volume: f64,
    /// `NaN` when the cell lies outside the model's domain.
    pub energy: f64,
    /// `None` for cells outside the model's domain.
    pub class: Option<CellClass>,
    pub boundary: BoundaryFlags,
}

/// Classifies the state `(T, v)`.
pub fn classify(model: &EntropyModel, temperature: f64, volume: f64) -> DomainCell {
    let invalid = DomainCell {
        temperature,
        volume,
        energy: f64::NAN,
        class: None,
        boundary: BoundaryFlags::default(),
    };
    let Ok(energy) = model.energy_from_temperature(temperature, volume) else {
        return invalid;
    };
    let Ok(jet) = model.derivatives(energy, volume) else {
        return invalid;
    };
    let forms = Forms::from_entropy(&jet);
    let sigma2 = sigma2_positive(&forms.sigma2);
    let sigma4 = match (sigma2, forms.sigma4) {
        (Sigma2Class::Degenerate, _) | (_, Err(_)) => Sigma4Class::UndefinedPole,
        (_, Ok(s4)) => sigma4_positive(&s4),
    };
    let cubic = CubicCoeffs::from_sigma3(&forms.sigma3);
    DomainCell {
        energy,
        class: Some(CellClass {
            sigma2,
            sigma4,
            processes: ProcessCount::from_discriminant(&cubic),
            discriminant: cubic.discriminant(),
        }),
        ..invalid
    }
}

/// Cells of the given temperature rows, row-major, without boundary
/// flags. Concatenating the rows of any partition gives the same cells as
/// one call over all rows.
pub fn scan_rows(model: &EntropyModel, grid: &Grid, rows: IndexRange<usize>) -> Vec<DomainCell> {
    let mut out = Vec::with_capacity(rows.len() * grid.volume.steps);
    for i in rows {
        let t = grid.temperature.value(i);
        for j in 0..grid.volume.steps {
            out.push(classify(model, t, grid.volume.value(j)));
        }
    }
    out
}

/// Sets [`BoundaryFlags`] on a full row-major grid of cells.
pub fn flag_boundaries(grid: &Grid, cells: &mut [DomainCell]) {
    assert_eq!(cells.len(), grid.len());
    let (rows, cols) = (grid.temperature.steps, grid.volume.steps);
    let mut flags = Vec::with_capacity(cells.len());
    for i in 0..rows {
        for j in 0..cols {
            let mut f = BoundaryFlags::default();
            if let Some(c) = cells[grid.index(i, j)].class {
                let neighbours = [
                    (i > 0).then(|| (i - 1, j)),
                    (i + 1 < rows).then(|| (i + 1, j)),
                    (j > 0).then(|| (i, j - 1)),
                    (j + 1 < cols).then(|| (i, j + 1)),
                ];
                for (ni, nj) in neighbours.into_iter().flatten() {
                    let Some(n) = cells[grid.index(ni, nj)].class else { continue };
                    if n.sigma2 != c.sigma2 {
                        f.insert(BoundaryFlags::SIGMA2);
                    }
                    if n.sigma4 != c.sigma4 {
                        f.insert(BoundaryFlags::SIGMA4);
                    }
                    if n.processes != c.processes {
                        f.insert(BoundaryFlags::PROCESSES);
                    }
                }
            }
            flags.push(f);
        }
    }
    for (cell, f) in cells.iter_mut().zip(flags) {
        cell.boundary = f;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scan {
    pub grid: Grid,
    pub cells: Vec<DomainCell>,
}

impl Scan {
    /// Assembles a scan from row-major cells and flags boundaries.
    pub fn from_cells(grid: Grid, mut cells: Vec<DomainCell>) -> Self {
        flag_boundaries(&grid, &mut cells);
        Self { grid, cells }
    }

    pub fn cell(&self, row: usize, col: usize) -> &DomainCell {
        &self.cells[self.grid.index(row, col)]
    }

    /// Cell at the grid point nearest `(T, v)`.
    pub fn nearest(&self, temperature: f64, volume: f64) -> &DomainCell {
        self.cell(self.grid.temperature.nearest(temperature), self.grid.volume.nearest(volume))
    }
}

/// Sequential scan; the `thermoforms` crate runs rows in parallel.
pub fn scan(model: &EntropyModel, grid: &Grid) -> Scan {
    Scan::from_cells(*grid, scan_rows(model, grid, 0..grid.temperature.steps))
}
