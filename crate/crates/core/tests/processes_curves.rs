//! Symmetric-process cubic against the expanded van der Waals polynomial,
//! root quality, and curve tracing accuracy.

use proptest::prelude::*;
use thermoforms_core::entropy::EntropyModel;
use thermoforms_core::forms::sigma3;
use thermoforms_core::processes::{cubic_at, integrate_process, symmetric_slopes, ProcessCount, Stop};

/// `(A₃, A₂, A₁, A₀)` of the expanded polynomial in `q`, typed in term by
/// term.
fn printed_vdw(e: f64, v: f64, n: f64) -> [f64; 4] {
    let p = |k: i32| v.powi(k);
    let a3 = 54.0 * e.powi(3) * p(6) - 243.0 * e * e * n * p(5) + 243.0 * e * e * n * p(4) + 486.0 * e * e * p(5)
        - 81.0 * e * e * n * p(3)
        - 729.0 * e * n * p(4)
        + 9.0 * e * e * n * p(2)
        + 729.0 * e * n * p(3)
        + 1458.0 * e * p(4)
        - 243.0 * e * n * p(2)
        - 729.0 * n * p(3)
        + 27.0 * e * n * v
        + 729.0 * n * p(2)
        + 1458.0 * p(3)
        - 243.0 * n * v
        + 27.0 * n;
    let a2 = -243.0 * e * n * p(6) + 243.0 * e * n * p(5) - 81.0 * e * n * p(4) + 9.0 * e * n * p(3);
    let a1 = -243.0 * n * p(7) + 243.0 * n * p(6) - 81.0 * n * p(5) + 9.0 * n * p(4);
    let a0 = 27.0 * n * p(9) - 27.0 * n * p(8) + 9.0 * n * p(7) - n * p(6);
    [a3, a2, a1, a0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vdw_cubic_is_proportional_to_printed(t in 0.2f64..3.0, v in 0.4f64..10.0, n in 1.0f64..15.0) {
        let m = EntropyModel::van_der_waals(n).unwrap();
        let e = m.energy_from_temperature(t, v).unwrap();
        let c = cubic_at(&m, e, v).unwrap();
        let a = printed_vdw(e, v, n);
        let ours = [c.c3, c.c2, c.c1, c.c0];
        // A₀ = n v⁶ (3v - 1)³ never vanishes on the domain
        let mu = a[3] / ours[3];
        let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for k in 0..4 {
            prop_assert!((a[k] - mu * ours[k]).abs() <= 1e-9 * scale, "coefficient {k}: {} vs {}", a[k], mu * ours[k]);
        }
    }

    #[test]
    fn roots_annihilate_sigma3(t in 0.2f64..3.0, v in 0.4f64..10.0, n in 1.0f64..15.0, ideal in any::<bool>()) {
        let m = if ideal { EntropyModel::ideal(n).unwrap() } else { EntropyModel::van_der_waals(n).unwrap() };
        let e = m.energy_from_temperature(t, v).unwrap();
        let s3 = sigma3(&m, e, v).unwrap();
        let roots = symmetric_slopes(&m, e, v).unwrap();
        prop_assert!(!roots.roots.is_empty());
        for q in roots.roots {
            let scale = s3.poly_coeffs().iter().fold(0.0f64, |m, x| m.max(x.abs())) * (1.0 + q.abs()).powi(3);
            prop_assert!(s3.eval(1.0, q).abs() <= 1e-8 * scale, "q = {q}: {}", s3.eval(1.0, q));
        }
    }
}

#[test]
fn ideal_curve_is_a_power_law() {
    let m = EntropyModel::ideal(3.0).unwrap();
    let k = 1.5f64.cbrt();
    let c = integrate_process(&m, [1.0, 1.0], 0, 1e-3, 1.0).unwrap();
    assert_eq!(c.stop, Stop::MaxLength);
    assert_eq!(c.points.len(), 1001);
    let worst = c.points.iter().map(|p| (p[1] - p[0].powf(-k)).abs()).fold(0.0, f64::max);
    assert!(worst <= 1e-6, "{worst}");
    assert!((c.points[1000][0] - 2.0).abs() < 1e-12);
}

#[test]
fn rk4_converges_at_fourth_order() {
    let m = EntropyModel::ideal(5.0).unwrap();
    let k = 2.5f64.cbrt();
    let err = |h: f64| {
        let c = integrate_process(&m, [1.0, 1.0], 0, h, 1.0).unwrap();
        let p = c.points[c.points.len() - 1];
        (p[1] - p[0].powf(-k)).abs()
    };
    let order = (err(0.1) / err(0.05)).log2();
    assert!(order >= 3.5, "observed order {order}");
}

#[test]
fn vdw_three_branches_from_the_critical_point() {
    let m = EntropyModel::van_der_waals(3.0).unwrap();
    assert_eq!(symmetric_slopes(&m, 1.0, 1.0).unwrap().roots.len(), 3);
    let ends: Vec<[f64; 2]> = (0..3)
        .map(|b| {
            let fine = integrate_process(&m, [1.0, 1.0], b, 5e-4, 0.05).unwrap();
            let coarse = integrate_process(&m, [1.0, 1.0], b, 1e-3, 0.05).unwrap();
            assert_eq!(fine.stop, Stop::MaxLength, "branch {b}");
            let (f, c) = (fine.points[fine.points.len() - 1], coarse.points[coarse.points.len() - 1]);
            assert!((f[1] - c[1]).abs() <= 1e-9, "branch {b} step halving: {} vs {}", f[1], c[1]);
            f
        })
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            assert!((ends[i][1] - ends[j][1]).abs() > 1e-3, "branches {i} and {j} coincide");
        }
    }
    // initial slopes were -1/3, 1/9, 1/3
    assert!(ends[0][1] < ends[1][1] && ends[1][1] < ends[2][1]);
}

#[test]
fn branch_lost_when_root_count_drops() {
    let m = EntropyModel::van_der_waals(3.0).unwrap();
    // v = 1 at T = 1.3 has three processes; heating along a branch leaves
    // the three-root band
    let e = m.energy_from_temperature(1.3, 1.0).unwrap();
    assert_eq!(ProcessCount::from_discriminant(&cubic_at(&m, e, 1.0).unwrap()), ProcessCount::Three);
    let stops: Vec<Stop> =
        (0..3).map(|b| integrate_process(&m, [e, 1.0], b, 1e-2, 20.0).unwrap().stop).collect();
    assert!(stops.contains(&Stop::BranchLost), "{stops:?}");
}
