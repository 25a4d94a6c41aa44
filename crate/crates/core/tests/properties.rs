use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use zerogaps::gapbounds::{thm1_bound, thm2_bound, LogScale};
use zerogaps::hypgeo::{
    check_log1p_bound, check_tanh_corollary, check_tanh_inequality, disk_distance,
    half_plane_distance, rect_distance, schwarz_pick_maps, strip_distance, RectangleDomain,
};
use zerogaps::lfunc::{
    evaluate, make_dedekind_quadratic, make_dirichlet, make_zeta, primitive_characters,
    quadratic_character,
};
use zerogaps::specfun::{hurwitz_zeta, jacobi_sncndn, log_gamma, riemann_zeta, EvalOptions};
use zerogaps::zeroscan::rotated_value;
use zerogaps::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.95f64, 0.0..2.0 * PI).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn mobius(z: Complex64, a: Complex64, rot: f64) -> Complex64 {
    Complex64::from_polar(1.0, rot) * (z - a) / (1.0 - a.conj() * z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn disk_distance_is_symmetric_and_mobius_invariant(
        z1 in disk_point(), z2 in disk_point(), a in disk_point(), rot in 0.0..2.0 * PI,
    ) {
        let d = disk_distance(z1, z2).unwrap();
        prop_assert!((d - disk_distance(z2, z1).unwrap()).abs() <= 1e-12 * (1.0 + d));
        let moved = disk_distance(mobius(z1, a, rot), mobius(z2, a, rot)).unwrap();
        prop_assert!((d - moved).abs() <= 1e-8 * (1.0 + d), "{d} vs {moved}");
        let direct = ((z1 - z2) / (1.0 - z1.conj() * z2)).norm().atanh();
        prop_assert!((d - direct).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn half_plane_matches_disk_through_cayley(
        x1 in -5.0..5.0f64, y1 in 0.05..5.0f64, x2 in -5.0..5.0f64, y2 in 0.05..5.0f64,
    ) {
        let (w1, w2) = (c(x1, y1), c(x2, y2));
        let cayley = |w: Complex64| (w - c(0.0, 1.0)) / (w + c(0.0, 1.0));
        let h = half_plane_distance(w1, w2).unwrap();
        let d = disk_distance(cayley(w1), cayley(w2)).unwrap();
        prop_assert!((h - d).abs() <= 1e-8 * (1.0 + h));
    }

    #[test]
    fn strip_distance_dominates_scaled_euclidean(
        a in 0.05..3.0f64, t in -100.0..100.0f64,
        x0 in -5.0..5.0f64, y0 in -0.99..0.99f64, x1 in -5.0..5.0f64,
    ) {
        let half = a * PI / 4.0;
        let s0 = c(x0, t + y0 * half);
        let s1 = c(x1, t);
        let d = strip_distance(s0, s1, t, a).unwrap();
        prop_assert!(d >= (s0 - s1).norm() / a - 1e-9, "d = {d}");
    }

    #[test]
    fn schwarz_pick_contracts(z1 in disk_point(), z2 in disk_point()) {
        for f in schwarz_pick_maps() {
            let (w1, w2) = (f.eval(z1), f.eval(z2));
            let before = disk_distance(z1, z2).unwrap();
            let after = disk_distance(w1, w2).unwrap();
            prop_assert!(after <= before + 1e-9, "{f:?}: {after} > {before}");
        }
    }

    #[test]
    fn rect_distance_symmetries(
        x1 in 0.05..0.95f64, y1 in 0.05..0.95f64, x2 in 0.05..0.95f64, y2 in 0.05..0.95f64,
    ) {
        let rect = RectangleDomain::new(1.0, 3.0, -1.0, 1.0).unwrap();
        let at = |x: f64, y: f64| c(1.0 + 2.0 * x, -1.0 + 2.0 * y);
        let (w1, w2) = (at(x1, y1), at(x2, y2));
        let d = rect_distance(w1, w2, &rect).unwrap();
        prop_assert!((d - rect_distance(w2, w1, &rect).unwrap()).abs() <= 1e-8 * (1.0 + d));
        let mirrored = rect_distance(w1.conj(), w2.conj(), &rect).unwrap();
        prop_assert!((d - mirrored).abs() <= 1e-8 * (1.0 + d));
        let flipped = rect_distance(at(1.0 - x1, y1), at(1.0 - x2, y2), &rect).unwrap();
        prop_assert!((d - flipped).abs() <= 1e-8 * (1.0 + d));
    }

    #[test]
    fn gamma_reflection(re in 0.01..0.99f64, im in -20.0..20.0f64) {
        let s = c(re, im);
        let lhs = (log_gamma(s).unwrap() + log_gamma(1.0 - s).unwrap()).exp();
        let rhs = PI / (PI * s).sin();
        prop_assert!((lhs - rhs).norm() < 1e-9 * rhs.norm());
    }

    #[test]
    fn jacobi_identities(re in -3.0..3.0f64, im in -0.5..0.5f64, k in 0.0..0.99f64) {
        let (sn, cn, dn) = jacobi_sncndn(c(re, im), k).unwrap();
        prop_assert!((sn * sn + cn * cn - 1.0).norm() < 1e-9);
        prop_assert!((dn * dn + k * k * sn * sn - 1.0).norm() < 1e-9);
    }

    #[test]
    fn sn_degenerates_to_sine(re in -3.0..3.0f64, im in -1.0..1.0f64) {
        let z = c(re, im);
        let (sn, _, _) = jacobi_sncndn(z, 0.0).unwrap();
        prop_assert!((sn - z.sin()).norm() < 1e-9 * (1.0 + z.sin().norm()));
    }

    #[test]
    fn hurwitz_decomposition(re in 1.2..4.0f64, im in -30.0..30.0f64, q in prop::sample::select(vec![3u32, 4, 5, 7])) {
        let s = c(re, im);
        let opts = EvalOptions::default();
        let sum: Complex64 = (1..=q)
            .map(|a| hurwitz_zeta(s, a as f64 / q as f64, &opts).unwrap())
            .sum();
        let z = riemann_zeta(s, &opts).unwrap();
        prop_assert!((sum * c(q as f64, 0.0).powc(-s) - z).norm() < 1e-10 * (1.0 + z.norm()));
    }

    #[test]
    fn dedekind_factors_as_zeta_times_l(re in -0.5..2.5f64, im in 0.5..40.0f64, d in prop::sample::select(vec![5i64, -3, -4, 8, -7])) {
        let s = c(re, im);
        let ded = evaluate(&make_dedekind_quadratic(d).unwrap(), s).unwrap();
        let l = evaluate(&make_dirichlet(&quadratic_character(d).unwrap()).unwrap(), s).unwrap();
        let z = evaluate(&make_zeta(), s).unwrap();
        prop_assert!((ded - z * l).norm() < 1e-10 * (1.0 + ded.norm()));
    }

    #[test]
    fn rotated_value_is_real(t in -60.0..60.0f64, idx in 0usize..6) {
        let mut specs = vec![make_zeta(), make_dedekind_quadratic(-3).unwrap()];
        for q in [3, 5, 7, 8] {
            specs.push(make_dirichlet(&primitive_characters(q).unwrap()[0]).unwrap());
        }
        let spec = &specs[idx];
        let v = rotated_value(spec, t).unwrap();
        prop_assert!(v.im.abs() <= 1e-8 * v.norm(), "{} at {t}: {v}", spec.label());
    }

    #[test]
    fn bounds_decrease_with_conductor(
        ll in 1.0..1e7f64, ratio in 1.001..10.0f64, m in 1u32..20, theta in 0.0..1.0f64,
    ) {
        let lo = LogScale::from_loglog_c(ll).unwrap();
        let hi = LogScale::from_loglog_c(ll * ratio).unwrap();
        for f in [thm1_bound, thm2_bound] {
            let a = f(m, theta, lo).ok().and_then(|b| b.value);
            let b = f(m, theta, hi).ok().and_then(|b| b.value);
            if let (Some(a), Some(b)) = (a, b) {
                prop_assert!(b < a);
            }
        }
    }

    #[test]
    fn theta_scales_bounds_by_one_plus_two_theta(ll in 1.0..1e7f64, m in 1u32..20, theta in 0.0..1.0f64) {
        let scale = LogScale::from_loglog_c(ll).unwrap();
        for f in [thm1_bound, thm2_bound] {
            let base = f(m, 0.0, scale).ok().and_then(|b| b.value);
            let tilted = f(m, theta, scale).ok().and_then(|b| b.value);
            if let (Some(base), Some(tilted)) = (base, tilted) {
                prop_assert!((tilted / base - (1.0 + 2.0 * theta)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn thm2_times_triple_log_is_constant(ll in 20.0..1e7f64, m in 1u32..100, theta in 0.0..1.0f64) {
        let b = thm2_bound(m, theta, LogScale::from_loglog_c(ll).unwrap()).unwrap();
        if let Some(v) = b.value {
            let l3 = (ll - (m as f64).ln()).ln();
            prop_assert!((v * l3 - PI / 2.0 * (1.0 + 2.0 * theta)).abs() < 1e-12);
        }
    }

    #[test]
    fn tanh_inequality_on_its_range(x in 1e-6..0.936f64) {
        prop_assert!(check_tanh_inequality(x).unwrap());
    }

    #[test]
    fn tanh_corollary_across_degrees(log_m in 0.0..(1e6f64).ln()) {
        prop_assert!(check_tanh_corollary(log_m.exp()));
    }

    #[test]
    fn log1p_bound_in_disk(w in disk_point()) {
        prop_assert!(check_log1p_bound(w).unwrap());
    }
}

#[test]
fn log_scale_rejects_overflow() {
    assert!(matches!(LogScale::from_c(f64::INFINITY), Err(Error::Overflow(_))));
    assert!(matches!(LogScale::from_log_c(f64::INFINITY), Err(Error::Overflow(_))));
    assert!(matches!(LogScale::from_logloglog_c(800.0), Err(Error::Overflow(_))));
    assert!(LogScale::from_c(f64::MAX).is_ok());
}

#[test]
fn thm2_applies_where_thm1_does_not_for_large_degree() {
    let mut found = 0;
    for m in [10u32, 100, 1000, 10_000] {
        let lm2 = (m as f64).ln().powi(2);
        for i in 0..1000 {
            let ll = 10f64.powf(7.0 * i as f64 / 999.0);
            if !(lm2 > ll) {
                continue;
            }
            let scale = LogScale::from_loglog_c(ll).unwrap();
            let t1 = thm1_bound(m, 0.0, scale).ok().and_then(|b| b.value);
            let t2 = thm2_bound(m, 0.0, scale).ok().and_then(|b| b.value);
            if t1.is_none() && t2.is_some() {
                found += 1;
            }
        }
    }
    assert!(found > 0);
}
