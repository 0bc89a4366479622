mod common;

use std::f64::consts::TAU;

use common::{c, disc_point, moebius, tangent};
use lempert::disc::{
    poincare_distance, poincare_metric, schwarz_pick_interpolate, FixedPointKind, Moebius,
};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn triangle_inequality(z1 in disc_point(0.99), z2 in disc_point(0.99), z3 in disc_point(0.99)) {
        let d = |a, b| poincare_distance(a, b).unwrap();
        prop_assert!(d(z1, z3) <= d(z1, z2) + d(z2, z3) + 1e-12);
    }
}

proptest! {
    #[test]
    fn moebius_invariance(m in moebius(), z1 in disc_point(0.9), z2 in disc_point(0.9), v in tangent()) {
        let d = poincare_distance(z1, z2).unwrap();
        let dm = poincare_distance(m.apply(z1).unwrap(), m.apply(z2).unwrap()).unwrap();
        prop_assert!((d - dm).abs() < 1e-10);
        let g = poincare_metric(z1, v).unwrap();
        let gm = poincare_metric(m.apply(z1).unwrap(), m.derivative(z1) * v).unwrap();
        prop_assert!((g - gm).abs() < 1e-10 * g.max(1.0));
    }

    #[test]
    fn inverse_round_trip(m in moebius(), z in disc_point(0.95)) {
        let back = m.invert().apply(m.apply(z).unwrap()).unwrap();
        prop_assert!((back - z).norm() < 1e-12);
        prop_assert!(m.compose(&m.invert()).is_identity(1e-12));
    }

    #[test]
    fn two_point_round_trip(m in moebius(), z1 in disc_point(0.9), w1 in disc_point(0.9)) {
        prop_assume!((z1 - w1).norm() > 1e-3);
        let (z2, w2) = (m.apply(z1).unwrap(), m.apply(w1).unwrap());
        let fit = Moebius::from_two_points(z1, z2, w1, w2).unwrap();
        prop_assert!((fit.apply(z1).unwrap() - z2).norm() < 1e-10);
        prop_assert!((fit.apply(w1).unwrap() - w2).norm() < 1e-10);
        prop_assert!(fit.approx_eq(&m, 1e-8));
    }

    #[test]
    fn interpolant_contracts(
        z1 in disc_point(0.9), z2 in disc_point(0.9),
        w1 in disc_point(0.9), w2 in disc_point(0.9),
        x in disc_point(0.95), y in disc_point(0.95),
    ) {
        let (dz, dw) = (poincare_distance(z1, z2).unwrap(), poincare_distance(w1, w2).unwrap());
        prop_assume!(dz > 1e-6);
        // swap roles so that the interpolation problem is feasible
        let (z1, z2, w1, w2) = if dw <= dz { (z1, z2, w1, w2) } else { (w1, w2, z1, z2) };
        let f = schwarz_pick_interpolate(z1, z2, w1, w2).unwrap();
        prop_assert!((f.value(z1) - w1).norm() < 1e-10);
        prop_assert!((f.value(z2) - w2).norm() < 1e-10);
        let before = poincare_distance(x, y).unwrap();
        let after = poincare_distance(f.value(x), f.value(y)).unwrap();
        prop_assert!(after <= before + 1e-9);
    }
}

#[test]
fn parabolic_classification_on_the_circle() {
    for j in 0..64 {
        let tau = Complex64::from_polar(1.0, TAU * j as f64 / 64.0);
        for strength in [0.3, 1.0, -2.5] {
            let class = Moebius::parabolic(tau, strength)
                .unwrap()
                .classify_fixed_points();
            assert_eq!(class.kind, FixedPointKind::Parabolic, "τ = {tau}");
            assert_eq!(class.fixed_points.len(), 1);
            assert!((class.fixed_points[0] - tau).norm() < 1e-6);
        }
    }
    assert!(Moebius::parabolic(c(0.5, 0.0), 1.0).is_err());
}
