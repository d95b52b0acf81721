//! Central-moment symmetric forms on the 2-D tangent plane of the state
//! surface, in `(e, v)` coordinates, computed from `I = -S`.
//!
//! * `σ₂ = I_ij dxⁱ dxʲ`
//! * `σ₃ = -I_ijk dxⁱ dxʲ dxᵏ`
//! * `σ₄(X⁴) = -I₄(X⁴) + 3 I₃(X², ·)ᵀ I₂⁻¹ I₃(X², ·) + 3 I₂(X, X)²`
//!
//! The last line is `-H₄ + 3 σ₂·σ₂` (fourth Hamiltonian derivative in
//! `λ = ∇I`) pulled back through `dλ = I₂ dx`. Differentiating
//! `H_ij = -(I₂⁻¹)_ij` twice more produces the `I₃ I₂⁻¹ I₃` term, so `σ₄`
//! has a genuine pole where `σ₂` degenerates.

use alloc::vec;
use alloc::vec::Vec;

use crate::entropy::EntropyModel;
use crate::jets::Jet4;
use crate::math;
use crate::{Error, Result};

/// Relative tolerance on `det σ₂` below which `σ₂` counts as degenerate.
pub const SIGMA2_DEGENERACY_TOL: f64 = 1e-12;

/// Fully symmetric tensor of rank `C - 1` on the plane spanned by
/// `(∂e, ∂v)`. Component `k` is the value with `k` slots on `∂v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymForm<const C: usize> {
    pub components: [f64; C],
}

pub type SymForm2 = SymForm<3>;
pub type SymForm3 = SymForm<4>;
pub type SymForm4 = SymForm<5>;

const fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1u64;
    let mut i = 0;
    while i < k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
        i += 1;
    }
    acc as f64
}

impl<const C: usize> SymForm<C> {
    pub const RANK: usize = C - 1;

    pub const fn new(components: [f64; C]) -> Self {
        Self { components }
    }

    /// Coefficients of the homogeneous polynomial `X ↦ σ(X, …, X)`:
    /// entry `k` multiplies `x₁^(rank-k) x₂^k`.
    pub fn poly_coeffs(&self) -> [f64; C] {
        let mut out = self.components;
        for (k, c) in out.iter_mut().enumerate() {
            *c *= binomial(Self::RANK, k);
        }
        out
    }

    pub fn from_poly_coeffs(coeffs: [f64; C]) -> Self {
        let mut components = coeffs;
        for (k, c) in components.iter_mut().enumerate() {
            *c /= binomial(Self::RANK, k);
        }
        Self { components }
    }

    /// `σ(X, …, X)` for `X = x₁ ∂e + x₂ ∂v`.
    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        // Horner in t = x2/x1 would lose x1 = 0; expand directly
        let p = self.poly_coeffs();
        let mut acc = 0.0;
        for (k, c) in p.iter().enumerate() {
            acc += c * math::powi(x1, (Self::RANK - k) as i32) * math::powi(x2, k as i32);
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        math::max_abs(&self.components)
    }
}

impl SymForm2 {
    pub fn det(&self) -> f64 {
        let [a, b, c] = self.components;
        a * c - b * b
    }

    /// `|ac - b²| <= tol · (|ac| + b²)`. Both sides scale alike under
    /// `X ↦ (αx₁, βx₂)`, so the test does not depend on units.
    pub fn is_degenerate(&self) -> bool {
        let [a, b, c] = self.components;
        math::abs(self.det()) <= SIGMA2_DEGENERACY_TOL * (math::abs(a * c) + b * b)
    }
}

/// The three forms at one state point. `sigma4` is an error at the pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forms {
    pub sigma2: SymForm2,
    pub sigma3: SymForm3,
    pub sigma4: Result<SymForm4>,
}

impl Forms {
    pub fn from_entropy(s: &Jet4) -> Self {
        Self { sigma2: sigma2_from(s), sigma3: sigma3_from(s), sigma4: sigma4_from(s) }
    }
}

pub fn forms(model: &EntropyModel, e: f64, v: f64) -> Result<Forms> {
    Ok(Forms::from_entropy(&model.derivatives(e, v)?))
}

pub fn sigma2(model: &EntropyModel, e: f64, v: f64) -> Result<SymForm2> {
    Ok(sigma2_from(&model.derivatives(e, v)?))
}

pub fn sigma3(model: &EntropyModel, e: f64, v: f64) -> Result<SymForm3> {
    Ok(sigma3_from(&model.derivatives(e, v)?))
}

pub fn sigma4(model: &EntropyModel, e: f64, v: f64) -> Result<SymForm4> {
    sigma4_from(&model.derivatives(e, v)?)
}

/// Components of the `I = -S` derivative tensor of order `r`.
fn info_tensor<const C: usize>(s: &Jet4) -> SymForm<C> {
    let r = C - 1;
    let mut components = [0.0; C];
    for (k, c) in components.iter_mut().enumerate() {
        *c = -s.partial(r - k, k);
    }
    SymForm { components }
}

pub fn sigma2_from(s: &Jet4) -> SymForm2 {
    info_tensor::<3>(s)
}

pub fn sigma3_from(s: &Jet4) -> SymForm3 {
    let i3 = info_tensor::<4>(s);
    SymForm { components: i3.components.map(|c| -c) }
}

/// Product of polynomials in `(x₁, x₂)` stored by power of `x₂`.
fn poly_mul(a: &[f64], b: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
}

pub fn sigma4_from(s: &Jet4) -> Result<SymForm4> {
    let i2 = info_tensor::<3>(s);
    let i3 = info_tensor::<4>(s);
    let i4 = info_tensor::<5>(s);
    if i2.is_degenerate() {
        return Err(Error::SingularSigma2 { det: i2.det() });
    }
    let [a, b, c] = i2.components;
    let det = i2.det();
    let [t0, t1, t2, t3] = i3.components;

    // covector I₃(X, X, ·) as quadratics in (x₁, x₂)
    let ue = [t0, 2.0 * t1, t2];
    let uv = [t1, 2.0 * t2, t3];
    let q = i2.poly_coeffs();

    let mut uu = [0.0; 5];
    let mut acc = [0.0; 5];
    // uᵀ adj(I₂) u / det, adj = [[c, -b], [-b, a]]
    poly_mul(&ue, &ue, &mut uu);
    acc.iter_mut().zip(uu).for_each(|(x, y)| *x += c * y);
    poly_mul(&ue, &uv, &mut uu);
    acc.iter_mut().zip(uu).for_each(|(x, y)| *x -= 2.0 * b * y);
    poly_mul(&uv, &uv, &mut uu);
    acc.iter_mut().zip(uu).for_each(|(x, y)| *x += a * y);

    let mut qq = [0.0; 5];
    poly_mul(&q, &q, &mut qq);

    let p4 = i4.poly_coeffs();
    let mut out = [0.0; 5];
    for k in 0..5 {
        out[k] = -p4[k] + 3.0 * acc[k] / det + 3.0 * qq[k];
    }
    Ok(SymForm4::from_poly_coeffs(out))
}

/// Dense tensor over `R^dim` of a given order, used for raw and central
/// moments of random vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTensor {
    dim: usize,
    order: usize,
    data: Vec<f64>,
}

impl MomentTensor {
    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let len = dim.pow(order as u32);
        let mut idx = vec![0; order];
        let mut data = Vec::with_capacity(len);
        for flat in 0..len {
            unflatten(flat, dim, &mut idx);
            data.push(f(&idx));
        }
        Self { dim, order, data }
    }

    pub fn vector(v: &[f64]) -> Self {
        Self { dim: v.len(), order: 1, data: v.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.order);
        let flat = idx.iter().fold(0, |acc, &i| acc * self.dim + i);
        self.data[flat]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn outer(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Self { dim: self.dim, order: self.order + other.order, data }
    }

    /// Average over all permutations of the index slots.
    fn symmetrize(&self) -> Self {
        let perms = permutations(self.order);
        let scale = 1.0 / perms.len() as f64;
        let mut permuted = vec![0; self.order];
        Self::from_fn(self.dim, self.order, |idx| {
            perms
                .iter()
                .map(|p| {
                    for (slot, &src) in p.iter().enumerate() {
                        permuted[slot] = idx[src];
                    }
                    self.get(&permuted)
                })
                .sum::<f64>()
                * scale
        })
    }
}

fn unflatten(mut flat: usize, dim: usize, idx: &mut [usize]) {
    for slot in idx.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Central moment `σ_k` from raw moments `m₁, …, m_k` (`raw[i - 1] = m_i`):
/// `σ_k = Σᵢ (-1)^(k-i) C(k, i) m_i · m₁^(k-i)` with `·` the symmetric
/// product.
pub fn central_from_raw(raw: &[MomentTensor]) -> Result<MomentTensor> {
    let k = raw.len();
    if !(1..=4).contains(&k) {
        return Err(Error::UnsupportedOrder(k));
    }
    let dim = raw[0].dim;
    if raw.iter().enumerate().any(|(i, m)| m.order != i + 1 || m.dim != dim) {
        return Err(Error::DimensionMismatch);
    }
    let mean = &raw[0];
    let mut total = MomentTensor::from_fn(dim, k, |_| 0.0);
    for i in 0..=k {
        // m_i ⊗ m₁^(k-i), with m₀ = 1
        let mut term = if i == 0 { MomentTensor { dim, order: 0, data: vec![1.0] } } else { raw[i - 1].clone() };
        for _ in 0..k - i {
            term = term.outer(mean);
        }
        let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
        let coef = sign * binomial(k, i);
        let sym = term.symmetrize();
        total.data.iter_mut().zip(&sym.data).for_each(|(t, s)| *t += coef * s);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn ideal_sigma2_is_p1() {
        let m = EntropyModel::ideal(3.0).unwrap();
        let s2 = sigma2(&m, 1.0, 1.0).unwrap();
        assert_eq!(s2.components, [1.5, 0.0, 1.0]);
        assert_eq!(s2.eval(0.0, 0.0), 0.0);
    }

    #[test]
    fn ideal_sigma3() {
        let m = EntropyModel::ideal(3.0).unwrap();
        assert_eq!(sigma3(&m, 1.0, 1.0).unwrap().components, [3.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn ideal_sigma4_is_p2() {
        let n = 3.0;
        let m = EntropyModel::ideal(n).unwrap();
        let p = sigma4(&m, 1.0, 1.0).unwrap().poly_coeffs();
        assert!(rel(p[0], 3.0 * n * (n + 4.0) / 4.0) < 1e-14);
        assert!(p[1].abs() < 1e-14 && p[3].abs() < 1e-14);
        assert!(rel(p[2], 3.0 * n) < 1e-14);
        assert!(rel(p[4], 9.0) < 1e-14);
    }

    #[test]
    fn vdw_critical_point_is_singular() {
        let m = EntropyModel::van_der_waals(3.0).unwrap();
        let s2 = sigma2(&m, 1.0, 1.0).unwrap();
        assert!(s2.is_degenerate(), "det = {}", s2.det());
        assert!(rel(s2.components[0], 0.25) < 1e-15);
        assert!(matches!(sigma4(&m, 1.0, 1.0), Err(Error::SingularSigma2 { .. })));
    }

    #[test]
    fn vdw_sigma3_at_critical_point() {
        let m = EntropyModel::van_der_waals(3.0).unwrap();
        let s3 = sigma3(&m, 1.0, 1.0).unwrap();
        let want = [1.0 / 8.0, -3.0 / 8.0, -3.0 / 8.0, 81.0 / 8.0];
        for k in 0..4 {
            assert!(rel(s3.components[k], want[k]) < 1e-14);
        }
        // σ₃((1, q)³) is the symmetric-process cubic
        let q = 0.37;
        let cubic = 81.0 / 8.0 * q * q * q - 9.0 / 8.0 * q * q - 9.0 / 8.0 * q + 1.0 / 8.0;
        assert!((s3.eval(1.0, q) - cubic).abs() < 1e-14);
    }

    #[test]
    fn poly_coeff_roundtrip() {
        let f = SymForm4::from_poly_coeffs([15.75, 0.0, 9.0, 0.0, 9.0]);
        assert_eq!(f.components[2], 1.5);
        assert_eq!(f.poly_coeffs(), [15.75, 0.0, 9.0, 0.0, 9.0]);
        assert_eq!(f.eval(1.0, 1.0), 33.75);
    }

    #[test]
    fn central_second_moment() {
        let m1 = MomentTensor::vector(&[1.0, 2.0]);
        let m2 = MomentTensor::from_fn(2, 2, |i| [[3.0, 2.5], [2.5, 5.0]][i[0]][i[1]]);
        let s = central_from_raw(&[m1, m2]).unwrap();
        assert_eq!(s.data(), &[2.0, 0.5, 0.5, 1.0]);
    }

    #[test]
    fn central_third_moment_1d() {
        let raw: Vec<_> =
            [1.0, 2.0, 5.0].iter().enumerate().map(|(i, &m)| MomentTensor::from_fn(1, i + 1, |_| m)).collect();
        let s = central_from_raw(&raw).unwrap();
        assert!((s.data()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn central_fourth_moment_standard_normal() {
        let raw: Vec<_> =
            [0.0, 1.0, 0.0, 3.0].iter().enumerate().map(|(i, &m)| MomentTensor::from_fn(1, i + 1, |_| m)).collect();
        assert_eq!(central_from_raw(&raw).unwrap().data(), &[3.0]);
    }

    #[test]
    fn central_from_raw_errors() {
        assert_eq!(central_from_raw(&[]), Err(Error::UnsupportedOrder(0)));
        let m1 = MomentTensor::vector(&[1.0, 2.0]);
        let bad = MomentTensor::from_fn(3, 2, |_| 0.0);
        assert_eq!(central_from_raw(&[m1.clone(), bad]), Err(Error::DimensionMismatch));
        assert_eq!(central_from_raw(&[m1.clone(), m1]), Err(Error::DimensionMismatch));
    }
}
