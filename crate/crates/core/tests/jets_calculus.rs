//! Jet arithmetic against finite differences of its own lower partials and
//! against algebraic identities.

use proptest::prelude::*;
use thermoforms_core::jets::{Axis, Jet4, ORDER};

/// A test function exercising every jet operation.
fn f(e: Jet4, v: Jet4) -> Jet4 {
    let ev = e * v;
    let a = ev.powf(1.5).unwrap() / (Jet4::constant(1.0) + e * e);
    let b = (e + v).ln().unwrap() * v;
    let c = (v * 3.0 + (-1.0)).powf(8.0 / 3.0).unwrap() - e.recip().unwrap();
    a + b + c
}

fn at(e: f64, v: f64) -> Jet4 {
    f(Jet4::variable(Axis::E, e), Jet4::variable(Axis::V, v))
}

/// Five-point central difference of `g` at `x` with step `h`.
fn d5(g: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (g(x - 2.0 * h) - 8.0 * g(x - h) + 8.0 * g(x + h) - g(x + 2.0 * h)) / (12.0 * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// `∂_e` of the jet's `(i, j)` partial, differenced over the base point,
    /// equals its `(i + 1, j)` partial; likewise for `v`. Order 0 is the
    /// plain function value, so this pins every order up to 4.
    #[test]
    fn partials_match_finite_differences(e in 0.5f64..3.0, v in 0.5f64..3.0) {
        let h = 1e-3;
        let jet = at(e, v);
        for &(i, j) in Jet4::multi_indices() {
            if i + j == ORDER {
                continue;
            }
            let de = d5(|x| at(x, v).partial(i, j), e, h);
            let dv = d5(|y| at(e, y).partial(i, j), v, h);
            let (we, wv) = (jet.partial(i + 1, j), jet.partial(i, j + 1));
            let scale = 1.0 + we.abs().max(wv.abs());
            prop_assert!((de - we).abs() <= 1e-6 * scale, "d/de of ({i},{j}): {de} vs {we}");
            prop_assert!((dv - wv).abs() <= 1e-6 * scale, "d/dv of ({i},{j}): {dv} vs {wv}");
        }
    }

    #[test]
    fn identities(e in 0.2f64..5.0, v in 0.5f64..5.0) {
        let a = at(e, v) + Jet4::constant(50.0);
        let b = Jet4::variable(Axis::E, e) * Jet4::variable(Axis::V, v) + 1.0;
        prop_assert_eq!(a * Jet4::constant(1.0), a);

        let lhs = (a * b).ln().unwrap().partials();
        let rhs = (a.ln().unwrap() + b.ln().unwrap()).partials();
        let back = (a / b * b).partials();
        let sq = a.powf(2.0).unwrap().partials();
        let aa = (a * a).partials();
        let inv = a.powf(-1.0).unwrap().partials();
        let rec = a.recip().unwrap().partials();
        let ap = a.partials();
        for k in 0..lhs.len() {
            let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()));
            prop_assert!(close(lhs[k], rhs[k]), "ln(ab) slot {k}: {} vs {}", lhs[k], rhs[k]);
            prop_assert!(close(back[k], ap[k]), "a/b*b slot {k}");
            prop_assert!(close(sq[k], aa[k]), "a^2 slot {k}");
            prop_assert!(close(inv[k], rec[k]), "a^-1 slot {k}");
        }
    }
}

#[test]
fn product_rule_on_monomials() {
    // e³v² at (2, 3): ∂e²∂v² = 6e·2 = 24
    let e = Jet4::variable(Axis::E, 2.0);
    let v = Jet4::variable(Axis::V, 3.0);
    let m = e.powf(3.0).unwrap() * v * v;
    assert_eq!(m.value(), 72.0);
    assert_eq!(m.partial(2, 2), 24.0);
    assert_eq!(m.partial(3, 1), 36.0);
    assert_eq!(m.partial(0, 4), 0.0);
}
