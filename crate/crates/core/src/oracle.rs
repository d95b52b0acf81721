//! One-dimensional exponential families with closed-form partition
//! functions.
//!
//! Tilting a base measure `q` by `ρ = e^(λX) / Z(λ)` and writing
//! `H(λ) = -ln Z(λ)`, the central moments follow from derivatives of `H`:
//! `σ₂ = -H''`, `σ₃ = -H'''`, `σ₄ = -H'''' + 3σ₂²`. This module computes them
//! both that way and by direct quadrature of `∫(X - m₁)^k ρ dq`, with no
//! thermodynamics involved.

use crate::math;
use crate::quadrature::{integrate, Tolerance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Standard normal base measure, `X(ω) = ω`; `Z = e^(λ²/2)`, `λ ∈ ℝ`.
    Gaussian,
    /// Base measure `e^(-ω) dω` on `ω ≥ 0`, `X(ω) = ω`; `Z = 1/(1 - λ)`,
    /// `λ < 1`.
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralMoments {
    pub sigma2: f64,
    pub sigma3: f64,
    pub sigma4: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericMoments {
    pub moments: CentralMoments,
    pub mean: f64,
    /// `∫ρ dq`, which should be 1.
    pub normalization: f64,
}

/// Relative contribution below which a further tail piece is dropped.
const TAIL_MASS: f64 = 1e-14;
const MAX_TAIL_PIECES: usize = 60;

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::Exponential => "exponential",
        }
    }

    pub fn contains(&self, lambda: f64) -> bool {
        match self {
            Self::Gaussian => lambda.is_finite(),
            Self::Exponential => lambda < 1.0 && lambda.is_finite(),
        }
    }

    fn check(&self, lambda: f64) -> Result<()> {
        if self.contains(lambda) {
            Ok(())
        } else {
            Err(Error::Argument { op: self.name(), value: lambda })
        }
    }

    pub fn partition(&self, lambda: f64) -> Result<f64> {
        self.check(lambda)?;
        Ok(match self {
            Self::Gaussian => math::exp(0.5 * lambda * lambda),
            Self::Exponential => 1.0 / (1.0 - lambda),
        })
    }

    /// `[H, H', H'', H''', H'''']` at `λ`.
    pub fn hamiltonian_derivs(&self, lambda: f64) -> Result<[f64; 5]> {
        self.check(lambda)?;
        Ok(match self {
            Self::Gaussian => [-0.5 * lambda * lambda, -lambda, -1.0, 0.0, 0.0],
            Self::Exponential => {
                let b = 1.0 - lambda;
                let r = 1.0 / b;
                [math::ln(b), -r, -r * r, -2.0 * r * r * r, -6.0 * r * r * r * r]
            }
        })
    }

    pub fn central_moments_analytic(&self, lambda: f64) -> Result<CentralMoments> {
        let h = self.hamiltonian_derivs(lambda)?;
        let sigma2 = -h[2];
        Ok(CentralMoments { sigma2, sigma3: -h[3], sigma4: -h[4] + 3.0 * sigma2 * sigma2 })
    }

    /// `ln` of the base density at `ω` (`-∞` off the support).
    fn log_base(&self, omega: f64) -> f64 {
        match self {
            Self::Gaussian => -0.5 * omega * omega - 0.5 * math::ln(2.0 * core::f64::consts::PI),
            Self::Exponential if omega >= 0.0 => -omega,
            Self::Exponential => f64::NEG_INFINITY,
        }
    }

    /// Integrates `f(ω) e^(λω) q(ω)` over the support, adding geometric
    /// tail pieces until each contributes less than [`TAIL_MASS`] relative
    /// to the running `∫|·|` of every component.
    fn integrate_tilted<const N: usize>(
        &self,
        lambda: f64,
        f: impl Fn(f64) -> [f64; N],
        tol: &Tolerance,
    ) -> Result<[f64; N]> {
        let g = |omega: f64| {
            let w = math::exp(lambda * omega + self.log_base(omega));
            let mut y = f(omega);
            y.iter_mut().for_each(|x| *x *= w);
            y
        };
        let width = 8.0;
        let (mut lo, mut hi) = match self {
            Self::Gaussian => (-width, width),
            Self::Exponential => (0.0, width),
        };
        let core = integrate(&g, lo, hi, tol)?;
        let mut value = core.value;
        let mut magnitude = core.magnitude;
        for _ in 0..MAX_TAIL_PIECES {
            let mut pieces = [None, None];
            pieces[0] = Some(integrate(&g, hi, 2.0 * hi, tol)?);
            if *self == Self::Gaussian {
                pieces[1] = Some(integrate(&g, 2.0 * lo, lo, tol)?);
            }
            let mut negligible = true;
            for est in pieces.iter().flatten() {
                for k in 0..N {
                    if est.magnitude[k] > TAIL_MASS * magnitude[k] {
                        negligible = false;
                    }
                    value[k] += est.value[k];
                    magnitude[k] += est.magnitude[k];
                }
            }
            hi *= 2.0;
            lo *= 2.0;
            if negligible {
                return Ok(value);
            }
        }
        Err(Error::QuadratureFail { estimate: value[0], error: f64::INFINITY })
    }

    /// Central moments by quadrature of the tilted density: first `Z` and
    /// `m₁`, then `∫(X - m₁)^k ρ dq` for `k = 0..=4`.
    pub fn central_moments_numeric(&self, lambda: f64, tol: &Tolerance) -> Result<NumericMoments> {
        self.check(lambda)?;
        let [z, first] = self.integrate_tilted(lambda, |w| [1.0, w], tol)?;
        let mean = first / z;
        let [m0, m2, m3, m4] = self.integrate_tilted(
            lambda,
            |w| {
                let d = w - mean;
                let d2 = d * d;
                [1.0, d2, d2 * d, d2 * d2]
            },
            tol,
        )?;
        Ok(NumericMoments {
            moments: CentralMoments { sigma2: m2 / z, sigma3: m3 / z, sigma4: m4 / z },
            mean,
            normalization: m0 / z,
        })
    }

    /// Solves `x = -H'(λ)` for `λ` by damped Newton.
    pub fn lambda_of_mean(&self, x: f64) -> Result<f64> {
        let mut lambda = 0.0;
        for _ in 0..200 {
            let h = self.hamiltonian_derivs(lambda)?;
            let residual = -h[1] - x;
            if math::abs(residual) <= 1e-15 * math::abs(x).max(1.0) {
                return Ok(lambda);
            }
            // d(-H')/dλ = -H'' = σ₂ > 0
            let mut step = residual / -h[2];
            while !self.contains(lambda - step) {
                step *= 0.5;
            }
            lambda -= step;
            // steep x(λ) near a domain edge: λ itself is converged to rounding
            if math::abs(step) <= 4.0 * f64::EPSILON * math::abs(lambda).max(1.0) {
                return Ok(lambda);
            }
        }
        Err(Error::Argument { op: "mean outside the family's range", value: x })
    }

    /// `I(x) = H(λ(x)) + λ(x) x`.
    pub fn information_gain(&self, x: f64) -> Result<f64> {
        let lambda = self.lambda_of_mean(x)?;
        Ok(self.hamiltonian_derivs(lambda)?[0] + lambda * x)
    }

    /// `|dI/dx - λ|` at `x = -H'(λ)`, with `dI/dx` from Richardson-extrapolated
    /// central differences.
    pub fn info_gain_check(&self, lambda: f64) -> Result<f64> {
        let x = -self.hamiltonian_derivs(lambda)?[1];
        let h = 1e-3 * math::abs(x).max(1.0);
        let central = |h: f64| -> Result<f64> {
            Ok((self.information_gain(x + h)? - self.information_gain(x - h)?) / (2.0 * h))
        };
        let derivative = (4.0 * central(0.5 * h)? - central(h)?) / 3.0;
        Ok(math::abs(derivative - lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn hamiltonians() {
        let g = Family::Gaussian.hamiltonian_derivs(0.5).unwrap();
        assert_eq!(g, [-0.125, -0.5, -1.0, 0.0, 0.0]);
        let e = Family::Exponential.hamiltonian_derivs(0.0).unwrap();
        assert_eq!(e, [0.0, -1.0, -1.0, -2.0, -6.0]);
        assert_eq!(Family::Exponential.hamiltonian_derivs(0.5).unwrap()[2], -4.0);
        assert!(Family::Exponential.hamiltonian_derivs(1.0).is_err());
    }

    #[test]
    fn analytic_moments() {
        let m = Family::Gaussian.central_moments_analytic(-2.0).unwrap();
        assert_eq!((m.sigma2, m.sigma3, m.sigma4), (1.0, 0.0, 3.0));
        let m = Family::Exponential.central_moments_analytic(0.0).unwrap();
        assert_eq!((m.sigma2, m.sigma3, m.sigma4), (1.0, 2.0, 9.0));
        let m = Family::Exponential.central_moments_analytic(0.5).unwrap();
        assert_eq!((m.sigma2, m.sigma3, m.sigma4), (4.0, 16.0, 144.0));
    }

    #[test]
    fn numeric_moments() {
        let tol = Tolerance::default();
        let m = Family::Gaussian.central_moments_numeric(0.0, &tol).unwrap().moments;
        assert!((m.sigma2 - 1.0).abs() < 1e-8 && m.sigma3.abs() < 1e-8 && (m.sigma4 - 3.0).abs() < 1e-8);
        let m = Family::Exponential.central_moments_numeric(0.0, &tol).unwrap().moments;
        assert!((m.sigma2 - 1.0).abs() < 1e-8 && (m.sigma3 - 2.0).abs() < 1e-8 && (m.sigma4 - 9.0).abs() < 1e-8);
        let m = Family::Exponential.central_moments_numeric(0.9, &tol).unwrap().moments;
        assert!(rel(m.sigma2, 100.0) < 1e-6 && rel(m.sigma3, 2000.0) < 1e-6 && rel(m.sigma4, 90000.0) < 1e-6);
    }

    #[test]
    fn legendre_relation() {
        assert!(Family::Exponential.info_gain_check(0.5).unwrap() <= 1e-7);
        assert!(Family::Gaussian.info_gain_check(1.0).unwrap() <= 1e-9);
        // untilted: x is the base mean and I vanishes there
        assert_eq!(Family::Gaussian.information_gain(0.0).unwrap(), 0.0);
        assert_eq!(Family::Exponential.information_gain(1.0).unwrap(), 0.0);
        assert!(Family::Gaussian.info_gain_check(0.0).unwrap() <= 1e-12);
        assert!(Family::Exponential.info_gain_check(0.0).unwrap() <= 1e-9);
        // closed form I(x) = x - 1 - ln x
        let x: f64 = 2.0;
        assert!((Family::Exponential.information_gain(x).unwrap() - (x - 1.0 - x.ln())).abs() < 1e-14);
    }
}
