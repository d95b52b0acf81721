//! Small dense univariate polynomials and Sturm real-root counting.
//!
//! Coefficients are stored highest degree first, matching how the quartic
//! `g(t) = σ₄((t, 1)⁴)` comes out of [`SymForm::poly_coeffs`](crate::forms::SymForm::poly_coeffs).

use alloc::vec::Vec;

use crate::math;

/// Relative size below which a remainder coefficient is treated as zero.
pub const STURM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    /// Highest degree first, leading coefficient nonzero (or empty for 0).
    coeffs: Vec<f64>,
}

impl Poly {
    /// Strips leading coefficients with `|c| <= tol · max|cᵢ|`.
    pub fn new(coeffs: &[f64], tol: f64) -> Self {
        let scale = math::max_abs(coeffs);
        let first = coeffs.iter().position(|&c| math::abs(c) > tol * scale && c != 0.0);
        Self { coeffs: first.map(|i| coeffs[i..].to_vec()).unwrap_or_default() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        let d = self.degree();
        let coeffs = self.coeffs.iter().take(d).enumerate().map(|(i, &c)| c * (d - i) as f64).collect();
        Self { coeffs }
    }

    /// Remainder of `self / divisor`; coefficients below
    /// `tol · max(|self|)` are dropped.
    fn rem(&self, divisor: &Self, tol: f64) -> Self {
        let scale = math::max_abs(&self.coeffs);
        let mut r = self.coeffs.clone();
        let dd = divisor.coeffs.len();
        while r.len() >= dd {
            let f = r[0] / divisor.coeffs[0];
            for (x, &y) in r.iter_mut().zip(&divisor.coeffs) {
                *x -= f * y;
            }
            r.remove(0);
        }
        let cut = tol * scale;
        let first = r.iter().position(|&c| math::abs(c) > cut);
        Self { coeffs: first.map(|i| r[i..].to_vec()).unwrap_or_default() }
    }

    fn normalized(mut self) -> Self {
        let s = math::max_abs(&self.coeffs);
        if s > 0.0 {
            self.coeffs.iter_mut().for_each(|c| *c /= s);
        }
        self
    }

    /// Sturm chain `p, p', -rem(p, p'), …`, each member scaled to unit
    /// max-coefficient.
    pub fn sturm_sequence(&self, tol: f64) -> Vec<Poly> {
        let mut seq = Vec::new();
        if self.is_zero() {
            return seq;
        }
        seq.push(self.clone().normalized());
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d.normalized());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1], tol);
            if r.is_zero() {
                break;
            }
            seq.push(Poly { coeffs: r.coeffs.iter().map(|c| -c).collect() }.normalized());
        }
        seq
    }

    /// Number of distinct real roots (multiple roots count once).
    pub fn count_real_roots(&self, tol: f64) -> usize {
        let seq = self.sturm_sequence(tol);
        let at_pos: Vec<f64> = seq.iter().map(|p| p.leading()).collect();
        let at_neg: Vec<f64> = seq
            .iter()
            .map(|p| if p.degree() % 2 == 0 { p.leading() } else { -p.leading() })
            .collect();
        sign_changes(&at_neg).saturating_sub(sign_changes(&at_pos))
    }
}

fn sign_changes(xs: &[f64]) -> usize {
    let mut last = 0.0;
    let mut n = 0;
    for &x in xs.iter().filter(|&&x| x != 0.0) {
        if last != 0.0 && (x > 0.0) != (last > 0.0) {
            n += 1;
        }
        last = x;
    }
    n
}
