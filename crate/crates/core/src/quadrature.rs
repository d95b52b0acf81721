//! Globally adaptive Gauss–Kronrod (7/15) quadrature of vector-valued
//! integrands on finite intervals.

use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-12, abs: 0.0, max_intervals: 2000 }
    }
}

/// Per-component estimate, error bound and `∫|f|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    pub magnitude: [f64; N],
}

#[derive(Clone, Copy)]
struct Piece<const N: usize> {
    a: f64,
    b: f64,
    est: Estimate<N>,
}

fn gk15<const N: usize>(f: &impl Fn(f64) -> [f64; N], a: f64, b: f64) -> Estimate<N> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = [0.0; N];
    let mut gauss = [0.0; N];
    let mut mag = [0.0; N];
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).enumerate() {
        let pts: &[f64] = if x == 0.0 { &[c] } else { &[c - h * x, c + h * x] };
        for &t in pts {
            let y = f(t);
            for k in 0..N {
                kron[k] += wk * y[k];
                mag[k] += wk * math::abs(y[k]);
                if i % 2 == 1 {
                    gauss[k] += WG[i / 2] * y[k];
                }
            }
        }
    }
    let mut est = Estimate { value: [0.0; N], error: [0.0; N], magnitude: [0.0; N] };
    for k in 0..N {
        est.value[k] = kron[k] * h;
        est.error[k] = math::abs((kron[k] - gauss[k]) * h);
        est.magnitude[k] = mag[k] * math::abs(h);
    }
    est
}

fn total<const N: usize>(pieces: &[Piece<N>]) -> Estimate<N> {
    let mut t = Estimate { value: [0.0; N], error: [0.0; N], magnitude: [0.0; N] };
    for p in pieces {
        for k in 0..N {
            t.value[k] += p.est.value[k];
            t.error[k] += p.est.error[k];
            t.magnitude[k] += p.est.magnitude[k];
        }
    }
    t
}

/// Worst ratio of error to allowed error over components.
fn excess<const N: usize>(est: &Estimate<N>, tol: &Tolerance) -> f64 {
    (0..N)
        .map(|k| {
            let allowed = tol.abs.max(tol.rel * est.magnitude[k]);
            if est.error[k] == 0.0 {
                0.0
            } else if allowed == 0.0 {
                f64::INFINITY
            } else {
                est.error[k] / allowed
            }
        })
        .fold(0.0, f64::max)
}

/// `∫ₐᵇ f`, componentwise. The error test is relative to `∫|f|`, so
/// components that integrate to zero still converge.
pub fn integrate<const N: usize>(
    f: impl Fn(f64) -> [f64; N],
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<Estimate<N>> {
    let mut pieces = Vec::with_capacity(64);
    pieces.push(Piece { a, b, est: gk15(&f, a, b) });
    loop {
        let t = total(&pieces);
        if t.value.iter().any(|x| !x.is_finite()) {
            return Err(Error::QuadratureFail { estimate: t.value[0], error: t.error[0] });
        }
        if excess(&t, tol) <= 1.0 {
            return Ok(t);
        }
        if pieces.len() >= tol.max_intervals {
            return Err(Error::QuadratureFail { estimate: t.value[0], error: t.error[0] });
        }
        // split the piece with the largest scaled error
        let worst = (0..pieces.len())
            .max_by(|&i, &j| {
                let ei = excess(&pieces[i].est, &Tolerance { abs: 0.0, ..*tol });
                let ej = excess(&pieces[j].est, &Tolerance { abs: 0.0, ..*tol });
                ei.total_cmp(&ej)
            })
            .unwrap_or(0);
        let p = pieces.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        pieces.push(Piece { a: p.a, b: m, est: gk15(&f, p.a, m) });
        pieces.push(Piece { a: m, b: p.b, est: gk15(&f, m, p.b) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let est = integrate(|x| [1.0, x * x, x * x * x], -1.0, 2.0, &Tolerance::default()).unwrap();
        assert!((est.value[0] - 3.0).abs() < 1e-14);
        assert!((est.value[1] - 3.0).abs() < 1e-14);
        assert!((est.value[2] - 3.75).abs() < 1e-14);
    }

    #[test]
    fn peaked_integrand() {
        let f = |x: f64| [libm::exp(-1e4 * (x - 0.3) * (x - 0.3))];
        let est = integrate(f, 0.0, 1.0, &Tolerance::default()).unwrap();
        let want = (core::f64::consts::PI / 1e4).sqrt();
        assert!((est.value[0] - want).abs() < 1e-12 * want, "{}", est.value[0]);
    }

    #[test]
    fn odd_integrand_converges_to_zero() {
        let est = integrate(|x| [x * libm::exp(-x * x)], -5.0, 5.0, &Tolerance::default()).unwrap();
        assert!(est.value[0].abs() < 1e-14);
    }

    #[test]
    fn singular_integrand_fails() {
        let tol = Tolerance { max_intervals: 50, ..Tolerance::default() };
        assert!(matches!(integrate(|x| [1.0 / x], 0.0, 1.0, &tol), Err(Error::QuadratureFail { .. })));
    }
}
