//! Randomised invariants across modules.

use proptest::prelude::*;

use beamkit::beam::{eval_direct, eval_direct_dispersive};
use beamkit::identities::hochstadt_sum_check;
use beamkit::integral_rep::{compute_r, eval_integral_rep};
use beamkit::partial_wave::{eval_series, truncation_order};
use beamkit::quadrature::integrate_finite;
use beamkit::specfun::{legendre_p_sequence, spherical_jn_sequence};
use beamkit::wavepacket::{
    triple_legendre_closed_form, triple_legendre_sum, ConeAngles, Summation,
};
use beamkit::{BeamParams, Complex64, DispersionModel, FieldPoint};

fn unit() -> impl Strategy<Value = f64> {
    -1.0f64..=1.0
}

fn beam() -> impl Strategy<Value = BeamParams> {
    (-20.0f64..20.0, unit()).prop_map(|(w, c)| BeamParams::new(w, c).unwrap())
}

fn point() -> impl Strategy<Value = FieldPoint> {
    (-10.0f64..10.0, 0.0f64..10.0, -10.0f64..10.0)
        .prop_map(|(z, rho, t)| FieldPoint::new(z, rho, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn legendre_bound_and_recurrence(x in unit(), n_max in 2usize..500) {
        let p = legendre_p_sequence(n_max, x).unwrap();
        let p = p.values();
        for n in 1..n_max {
            prop_assert!(p[n].abs() <= 1.0);
            let nf = n as f64;
            let residual = (nf + 1.0) * p[n + 1] - (2.0 * nf + 1.0) * x * p[n] + nf * p[n - 1];
            prop_assert!(residual.abs() <= 1e-12, "n={} residual={}", n, residual);
        }
    }

    #[test]
    fn spherical_recurrence(x in 1e-3f64..200.0, n_max in 2usize..250) {
        let j = spherical_jn_sequence(n_max, x);
        let j = j.values();
        prop_assert!((j[0] * x - x.sin()).abs() <= 1e-15 * x.max(1.0));
        for n in 1..n_max {
            if j[n].abs() <= 1e-200 {
                continue;
            }
            let rhs = (2 * n + 1) as f64 / x * j[n];
            let lhs = j[n - 1] + j[n + 1];
            // Relative to the largest participant; the two sides may cancel.
            let scale = rhs.abs().max(j[n - 1].abs()).max(j[n + 1].abs());
            prop_assert!((lhs - rhs).abs() <= 1e-11 * scale, "n={} x={}", n, x);
        }
    }

    #[test]
    fn direct_is_bounded(b in beam(), p in point()) {
        prop_assert!(eval_direct(&b, &p).norm() <= 1.0 + 1e-15);
    }

    #[test]
    fn direct_on_axis_is_pure_phase(b in beam(), z in -10.0f64..10.0, t in -10.0f64..10.0) {
        let got = eval_direct(&b, &FieldPoint::new(z, 0.0, t).unwrap());
        let want = Complex64::from_polar(1.0, b.omega() * b.cos_theta() * z - b.omega() * t);
        prop_assert!((got - want).norm() <= 1e-15 * (1.0 + b.omega().abs() * (z.abs() + t.abs())));
    }

    #[test]
    fn direct_frequency_parity(b in beam(), p in point()) {
        let neg = BeamParams::new(-b.omega(), b.cos_theta()).unwrap();
        prop_assert_eq!(eval_direct(&neg, &p), eval_direct(&b, &p).conj());
    }

    #[test]
    fn vacuum_dispersion_is_bit_identical(b in beam(), p in point()) {
        prop_assert_eq!(eval_direct_dispersive(&b, &DispersionModel::Vacuum, &p).unwrap(), eval_direct(&b, &p));
    }

    #[test]
    fn finite_quadrature_is_linear(c in -1e3f64..1e3, w in 0.1f64..20.0, a in -5.0f64..0.0, len in 0.1f64..10.0) {
        let f = |x: f64| Complex64::new((w * x).cos() * (-x * x).exp(), x.sin());
        let base = integrate_finite(f, a, a + len, 1e-13);
        let scaled = integrate_finite(|x| f(x) * c, a, a + len, 1e-13);
        let want = base.value * c;
        prop_assert!((scaled.value - want).norm() <= 1e-12 * want.norm().max(1e-300) + 1e-300);
    }

    #[test]
    fn kernel_distance_triangle(l in 0.0f64..100.0, m in 0.0f64..100.0, c in unit()) {
        let r = compute_r(l, m, c);
        let slack = 1e-12 * (l + m);
        prop_assert!((l - m).abs() <= r + slack && r <= l + m + slack, "R={}", r);
    }

    #[test]
    fn triple_sum_permutation_invariance(a in unit(), b in unit(), c in unit(), n_max in 1usize..300) {
        let perms = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
        for mode in [Summation::Raw, Summation::Cesaro, Summation::DoubleAverage] {
            let first = triple_legendre_sum(&ConeAngles::new(a, b, c), n_max, mode).unwrap().value;
            for &(x, y, z) in &perms[1..] {
                let v = triple_legendre_sum(&ConeAngles::new(x, y, z), n_max, mode).unwrap().value;
                prop_assert_eq!(v, first);
            }
        }
        let closed = triple_legendre_closed_form(&ConeAngles::new(a, b, c));
        for &(x, y, z) in &perms[1..] {
            let other = triple_legendre_closed_form(&ConeAngles::new(x, y, z));
            match (&closed, &other) {
                (Ok(u), Ok(v)) => prop_assert_eq!(u, v),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "closed form defined for one ordering only"),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_matches_direct(b in beam(), p in point()) {
        let s = eval_series(&b, &p, 1e-12);
        prop_assert!(s.converged);
        prop_assert!((s.value - eval_direct(&b, &p)).norm() <= 1e-10, "series off by {}", (s.value - eval_direct(&b, &p)).norm());
    }

    #[test]
    fn series_on_axis_is_unimodular(b in beam(), z in -10.0f64..10.0, t in -10.0f64..10.0) {
        let s = eval_series(&b, &FieldPoint::new(z, 0.0, t).unwrap(), 1e-12);
        prop_assert!((s.value.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn hochstadt_on_random_triples(l in 0.0f64..20.0, m in 0.0f64..20.0, c in unit()) {
        let n_max = truncation_order(l.max(m), 1e-12);
        let r = hochstadt_sum_check(l, m, c, n_max).unwrap();
        prop_assert!(r.pass, "abs_err={}", r.abs_err);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn integral_matches_direct(w in -12.0f64..12.0, c in unit(), z in -3.0f64..3.0, rho in 0.0f64..5.0, t in -2.0f64..2.0) {
        let b = BeamParams::new(w, c).unwrap();
        let p = FieldPoint::new(z, rho, t).unwrap();
        let q = eval_integral_rep(&b, &p, 1e-9);
        prop_assert!((q.value - eval_direct(&b, &p)).norm() <= 1e-6, "integral off by {}", (q.value - eval_direct(&b, &p)).norm());
    }

    #[test]
    fn integral_is_real_at_right_angles(w in 0.1f64..12.0, rho in 0.0f64..5.0) {
        // cos(theta) = 0 and cos(eta) = 0 (z = 0), t = 0: the field is real.
        let q = eval_integral_rep(&BeamParams::new(w, 0.0).unwrap(), &FieldPoint::new(0.0, rho, 0.0).unwrap(), 1e-10);
        prop_assert!(q.value.im.abs() <= 1e-8, "im={}", q.value.im);
    }
}

#[test]
fn reports_are_reproducible() {
    use beamkit::identities::{run_suite, Suite};
    for suite in [Suite::Hochstadt, Suite::TripleSum, Suite::Stratton] {
        let a = run_suite(suite).unwrap();
        let b = run_suite(suite).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(
                x.abs_err.to_bits(),
                y.abs_err.to_bits(),
                "{}",
                x.identity_id
            );
        }
    }
}
