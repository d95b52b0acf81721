//! Truncated Taylor arithmetic in two variables `(e, v)` up to total order 4.
//!
//! A [`Jet4`] carries the value and every partial derivative
//! `∂^(i+j) f / ∂e^i ∂v^j` with `i + j <= 4` of a scalar function at one
//! point. Sums, products, quotients, `ln` and real powers of jets give the
//! jet of the composite function, so an entropy expression written with jets
//! yields all of its partials up to fourth order without symbolic algebra.
//!
//! Internally the slots hold normalized Taylor coefficients
//! `f_ij / (i! j!)`, which turns products into plain truncated convolutions.
//! [`Jet4::partial`] converts back to derivatives.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::math;
use crate::{Error, Result};

/// Truncation order.
pub const ORDER: usize = 4;
/// Number of `(i, j)` multi-indices with `i + j <= ORDER`.
pub const SLOTS: usize = (ORDER + 1) * (ORDER + 2) / 2;

const FACT: [f64; ORDER + 1] = [1.0, 1.0, 2.0, 6.0, 24.0];

/// Slot of multi-index `(i, j)`: grouped by total degree, then by `j`.
#[inline]
pub const fn slot(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Inverse of [`slot`].
const MULTI: [(usize, usize); SLOTS] = {
    let mut out = [(0, 0); SLOTS];
    let mut d = 0;
    while d <= ORDER {
        let mut j = 0;
        while j <= d {
            out[slot(d - j, j)] = (d - j, j);
            j += 1;
        }
        d += 1;
    }
    out
};

/// Independent variable of a jet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    E,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet4 {
    taylor: [f64; SLOTS],
}

impl Default for Jet4 {
    fn default() -> Self {
        Self::constant(0.0)
    }
}

impl Jet4 {
    pub const fn constant(c: f64) -> Self {
        let mut taylor = [0.0; SLOTS];
        taylor[0] = c;
        Self { taylor }
    }

    /// The coordinate function `which`, evaluated at `value`.
    pub const fn variable(which: Axis, value: f64) -> Self {
        let mut taylor = [0.0; SLOTS];
        taylor[0] = value;
        match which {
            Axis::E => taylor[slot(1, 0)] = 1.0,
            Axis::V => taylor[slot(0, 1)] = 1.0,
        }
        Self { taylor }
    }

    /// Builds a jet from partial derivatives; `partials(i, j)` is queried for
    /// every `i + j <= 4`.
    pub fn from_partials(mut partials: impl FnMut(usize, usize) -> f64) -> Self {
        let mut taylor = [0.0; SLOTS];
        for (k, &(i, j)) in MULTI.iter().enumerate() {
            taylor[k] = partials(i, j) / (FACT[i] * FACT[j]);
        }
        Self { taylor }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.taylor[0]
    }

    /// `∂^(i+j) f / ∂e^i ∂v^j`. Panics if `i + j > 4`.
    #[inline]
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= ORDER, "jet truncated at total order {ORDER}");
        self.taylor[slot(i, j)] * FACT[i] * FACT[j]
    }

    /// All partial derivatives in slot order.
    pub fn partials(&self) -> [f64; SLOTS] {
        let mut out = [0.0; SLOTS];
        for (k, &(i, j)) in MULTI.iter().enumerate() {
            out[k] = self.taylor[k] * FACT[i] * FACT[j];
        }
        out
    }

    /// `(i, j)` multi-index of each slot.
    pub fn multi_indices() -> &'static [(usize, usize); SLOTS] {
        &MULTI
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = *self;
        out.taylor.iter_mut().for_each(|x| *x *= c);
        out
    }

    /// Composes a univariate function with this jet, given the function's
    /// derivatives `f^(k)(a₀)` at the constant term for `k = 0..=4`.
    pub fn compose(&self, derivs: [f64; ORDER + 1]) -> Self {
        let mut delta = *self;
        delta.taylor[0] = 0.0;
        let mut out = Self::constant(derivs[0]);
        let mut power = Self::constant(1.0);
        for (k, d) in derivs.iter().enumerate().skip(1) {
            power = power * delta;
            out = out + power.scale(d / FACT[k]);
        }
        out
    }

    pub fn recip(&self) -> Result<Self> {
        let b = self.value();
        if b == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let r = 1.0 / b;
        Ok(self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r, 24.0 * r * r * r * r * r]))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.recip()?)
    }

    pub fn ln(&self) -> Result<Self> {
        let a = self.value();
        if !(a > 0.0) {
            return Err(Error::Argument { op: "ln", value: a });
        }
        let r = 1.0 / a;
        Ok(self.compose([math::ln(a), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }

    /// `self^r`. Non-integer exponents need a positive base; integer
    /// exponents accept any base except a negative power of zero.
    pub fn powf(&self, r: f64) -> Result<Self> {
        let a = self.value();
        let integer = math::is_integer(r);
        if !integer && !(a > 0.0) {
            return Err(Error::Argument { op: "pow", value: a });
        }
        if integer && a == 0.0 && r < 0.0 {
            return Err(Error::DivisionByZero);
        }
        let mut derivs = [0.0; ORDER + 1];
        let mut falling = 1.0;
        for (k, d) in derivs.iter_mut().enumerate() {
            let exponent = r - k as f64;
            // r(r-1)...(r-k+1) vanishes from k = r + 1 on for natural r
            *d = if falling == 0.0 {
                0.0
            } else if integer {
                falling * math::powi(a, exponent as i32)
            } else {
                falling * math::powf(a, exponent)
            };
            falling *= exponent;
        }
        Ok(self.compose(derivs))
    }
}

impl Add for Jet4 {
    type Output = Jet4;
    fn add(mut self, rhs: Jet4) -> Jet4 {
        self.taylor.iter_mut().zip(rhs.taylor).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for Jet4 {
    type Output = Jet4;
    fn sub(mut self, rhs: Jet4) -> Jet4 {
        self.taylor.iter_mut().zip(rhs.taylor).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Neg for Jet4 {
    type Output = Jet4;
    fn neg(self) -> Jet4 {
        self.scale(-1.0)
    }
}

impl Mul for Jet4 {
    type Output = Jet4;
    fn mul(self, rhs: Jet4) -> Jet4 {
        let mut taylor = [0.0; SLOTS];
        for (ka, &(ia, ja)) in MULTI.iter().enumerate() {
            let a = self.taylor[ka];
            if a == 0.0 {
                continue;
            }
            for (kb, &(ib, jb)) in MULTI.iter().enumerate() {
                if ia + ja + ib + jb <= ORDER {
                    taylor[slot(ia + ib, ja + jb)] += a * rhs.taylor[kb];
                }
            }
        }
        Jet4 { taylor }
    }
}

/// IEEE semantics: a zero denominator yields infinities/NaN rather than an
/// error. Use [`Jet4::checked_div`] to get [`Error::DivisionByZero`].
impl Div for Jet4 {
    type Output = Jet4;
    fn div(self, rhs: Jet4) -> Jet4 {
        let r = 1.0 / rhs.value();
        self * rhs.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r, 24.0 * r * r * r * r * r])
    }
}

impl Add<f64> for Jet4 {
    type Output = Jet4;
    fn add(mut self, rhs: f64) -> Jet4 {
        self.taylor[0] += rhs;
        self
    }
}

impl Mul<f64> for Jet4 {
    type Output = Jet4;
    fn mul(self, rhs: f64) -> Jet4 {
        self.scale(rhs)
    }
}
