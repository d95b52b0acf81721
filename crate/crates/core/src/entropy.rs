//! Entropy models `S(e, v)` and the Legendrian state map.
//!
//! Two gas models are built in:
//!
//! * ideal gas, `S = ln(e^(n/2) v)`, valid for `e > 0`, `v > 0`;
//! * van der Waals in reduced variables,
//!   `S = ln((e + 3/v)^(4n/3) (3v - 1)^(8/3))`, valid for `v > 1/3` and
//!   `e + 3/v > 0`. The critical point sits at `(T, v, p) = (1, 1, 1)`.
//!
//! Their partial derivatives up to order 4 come from closed forms; the same
//! expressions written with [`Jet4`] arithmetic are available through
//! [`EntropyModel::jet_derivatives`] as an independent check. Custom models
//! are plain functions of two jets.

use crate::jets::{Axis, Jet4, ORDER};
use crate::math;
use crate::{Error, Result};

/// A user-supplied entropy `S(e, v)` written in jet arithmetic.
///
/// Errors raised by the function (e.g. `ln` of a negative number) mark the
/// point as outside the model's domain.
#[derive(Debug, Clone, Copy)]
pub struct CustomEntropy {
    pub name: &'static str,
    pub entropy: fn(Jet4, Jet4) -> Result<Jet4>,
}

#[derive(Debug, Clone, Copy)]
pub enum EntropyModel {
    /// `S = ln(e^(n/2) v)`; `n` is the number of degrees of freedom.
    IdealGas { n: f64 },
    /// Reduced van der Waals entropy `S = ln((e + 3/v)^(4n/3) (3v - 1)^(8/3))`.
    VanDerWaals { n: f64 },
    Custom(CustomEntropy),
}

/// A point of the Legendrian manifold: `s = S(e, v)`, `T = 1/S_e`,
/// `p = S_v / S_e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePoint {
    pub e: f64,
    pub v: f64,
    pub s: f64,
    pub temperature: f64,
    pub pressure: f64,
}

fn check_dof(n: f64) -> Result<f64> {
    if n.is_finite() && n > 0.0 {
        Ok(n)
    } else {
        Err(Error::Argument { op: "degrees of freedom", value: n })
    }
}

/// `d^k/dw^k ln(w)` for `k = 0..=4`.
fn ln_derivs(w: f64) -> [f64; ORDER + 1] {
    let r = 1.0 / w;
    [math::ln(w), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]
}

/// Derivatives `0..=4` of `h(w(v))` given `h^(k)(w(v))` in `h` and
/// `w^(k)(v)` in `w` (Faà di Bruno, one variable).
fn chain(h: &[f64], w: &[f64; ORDER + 1], order: usize) -> f64 {
    let (w1, w2, w3, w4) = (w[1], w[2], w[3], w[4]);
    match order {
        0 => h[0],
        1 => h[1] * w1,
        2 => h[2] * w1 * w1 + h[1] * w2,
        3 => h[3] * w1 * w1 * w1 + 3.0 * h[2] * w1 * w2 + h[1] * w3,
        4 => {
            h[4] * w1 * w1 * w1 * w1
                + 6.0 * h[3] * w1 * w1 * w2
                + h[2] * (3.0 * w2 * w2 + 4.0 * w1 * w3)
                + h[1] * w4
        }
        _ => unreachable!("order above 4"),
    }
}

impl EntropyModel {
    pub fn ideal(n: f64) -> Result<Self> {
        Ok(Self::IdealGas { n: check_dof(n)? })
    }

    pub fn van_der_waals(n: f64) -> Result<Self> {
        Ok(Self::VanDerWaals { n: check_dof(n)? })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::IdealGas { .. } => "ideal",
            Self::VanDerWaals { .. } => "vdw",
            Self::Custom(c) => c.name,
        }
    }

    /// Degrees of freedom, when the model has them.
    pub fn dof(&self) -> Option<f64> {
        match *self {
            Self::IdealGas { n } | Self::VanDerWaals { n } => Some(n),
            Self::Custom(_) => None,
        }
    }

    /// Whether `(e, v)` lies in the validity domain. Custom models are
    /// checked by evaluating them.
    pub fn contains(&self, e: f64, v: f64) -> bool {
        match *self {
            Self::IdealGas { .. } => e > 0.0 && v > 0.0 && e.is_finite() && v.is_finite(),
            Self::VanDerWaals { .. } => {
                v > 1.0 / 3.0 && e + 3.0 / v > 0.0 && e.is_finite() && v.is_finite()
            }
            Self::Custom(c) => (c.entropy)(Jet4::constant(e), Jet4::constant(v))
                .map(|s| s.value().is_finite())
                .unwrap_or(false),
        }
    }

    fn check(&self, e: f64, v: f64) -> Result<()> {
        if self.contains(e, v) {
            Ok(())
        } else {
            Err(Error::Domain { model: self.name(), e, v })
        }
    }

    /// `S(e, v)`.
    pub fn entropy(&self, e: f64, v: f64) -> Result<f64> {
        self.check(e, v)?;
        Ok(match *self {
            Self::IdealGas { n } => 0.5 * n * math::ln(e) + math::ln(v),
            Self::VanDerWaals { n } => {
                4.0 * n / 3.0 * math::ln(e + 3.0 / v) + 8.0 / 3.0 * math::ln(3.0 * v - 1.0)
            }
            Self::Custom(c) => (c.entropy)(Jet4::constant(e), Jet4::constant(v))?.value(),
        })
    }

    /// Jet of `S` at `(e, v)`. Built-in models use closed-form partials.
    pub fn derivatives(&self, e: f64, v: f64) -> Result<Jet4> {
        self.check(e, v)?;
        match *self {
            Self::IdealGas { n } => {
                let le = ln_derivs(e);
                let lv = ln_derivs(v);
                Ok(Jet4::from_partials(|i, j| match (i, j) {
                    (0, 0) => 0.5 * n * le[0] + lv[0],
                    (i, 0) => 0.5 * n * le[i],
                    (0, j) => lv[j],
                    _ => 0.0,
                }))
            }
            Self::VanDerWaals { n } => {
                let a = 4.0 * n / 3.0;
                let w = e + 3.0 / v;
                let g = ln_derivs(w);
                // derivatives of w = e + 3/v with respect to v
                let (r, r2) = (1.0 / v, 1.0 / (v * v));
                let wv = [w, -3.0 * r2, 6.0 * r2 * r, -18.0 * r2 * r2, 72.0 * r2 * r2 * r];
                let u = 3.0 * v - 1.0;
                let gu = ln_derivs(u);
                Ok(Jet4::from_partials(|i, j| {
                    let attraction = a * chain(&g[i..], &wv, j);
                    let excluded = if i == 0 {
                        8.0 / 3.0 * gu[j] * math::powi(3.0, j as i32)
                    } else {
                        0.0
                    };
                    attraction + excluded
                }))
            }
            Self::Custom(c) => self.jet_derivatives_unchecked(c, e, v),
        }
    }

    /// Jet of `S` evaluated purely with jet arithmetic.
    pub fn jet_derivatives(&self, e: f64, v: f64) -> Result<Jet4> {
        self.check(e, v)?;
        let je = Jet4::variable(Axis::E, e);
        let jv = Jet4::variable(Axis::V, v);
        match *self {
            Self::IdealGas { n } => Ok((je.powf(0.5 * n)? * jv).ln()?),
            Self::VanDerWaals { n } => {
                let attraction = (je + Jet4::constant(3.0).checked_div(&jv)?).powf(4.0 * n / 3.0)?;
                let excluded = (jv * 3.0 + -1.0).powf(8.0 / 3.0)?;
                (attraction * excluded).ln()
            }
            Self::Custom(c) => self.jet_derivatives_unchecked(c, e, v),
        }
    }

    fn jet_derivatives_unchecked(&self, c: CustomEntropy, e: f64, v: f64) -> Result<Jet4> {
        (c.entropy)(Jet4::variable(Axis::E, e), Jet4::variable(Axis::V, v))
    }

    /// Information gain `I = -S`.
    pub fn information_gain(&self, e: f64, v: f64) -> Result<f64> {
        Ok(-self.entropy(e, v)?)
    }

    pub fn state(&self, e: f64, v: f64) -> Result<StatePoint> {
        let d = self.derivatives(e, v)?;
        let (s_e, s_v) = (d.partial(1, 0), d.partial(0, 1));
        if !(s_e > 0.0) {
            return Err(Error::NonPositiveTemperature { s_e });
        }
        Ok(StatePoint { e, v, s: d.value(), temperature: 1.0 / s_e, pressure: s_v / s_e })
    }

    /// Solves `T = 1/S_e(e, v)` for `e` at fixed `v`.
    pub fn energy_from_temperature(&self, t: f64, v: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Argument { op: "temperature", value: t });
        }
        let e = match *self {
            Self::IdealGas { n } => 0.5 * n * t,
            Self::VanDerWaals { n } => 4.0 * n * t / 3.0 - 3.0 / v,
            Self::Custom(_) => {
                return Err(Error::Argument { op: "temperature inversion for custom model", value: t })
            }
        };
        self.check(e, v)?;
        Ok(e)
    }
}
