//! The `verify` pipeline: named suites of grid and sampling checks, each
//! reported as a list of [`CheckResult`]s.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{EXIT_FAILURE, EXIT_OK, EXIT_USAGE, VERSION};
use crate::error::{Error, Result};
use crate::hypgeo::{
    borel_family, build_rect_map, check_log1p_bound, disk_distance, lemma25_distance,
    lemma_borel_outcome, lemma_rademacher_outcome, lemma_siegel_outcome, rademacher_family,
    rect_distance, schwarz_pick_maps, siegel_family, strip_distance, RectangleDomain,
};
use crate::lfunc::{
    dirichlet_coefficient, euler_product, evaluate, functional_equation_residual, lambda_coeff,
    make_dedekind_quadratic, make_dirichlet, make_zeta, primitive_characters, probe_order_at_zero,
    quadratic_character, CharacterGroup, LFunctionSpec,
};
use crate::paperchecks::{
    check_appendix_fracint_with, check_appendix_logderiv_with, check_appendix_sum_bound_with,
    check_lemma22, check_lemma26, check_zeta_sandwich_with, default_sigma_grid,
    default_strip_grid, fractional_integral_quadrature, CheckResult, Faults, StripIndices, Witness,
    DEFAULT_TOL,
};
use crate::specfun::{
    hurwitz_zeta, jacobi_sncndn, log_gamma, riemann_zeta, solve_modulus_for_ratio,
    von_mangoldt, CompensatedSum, EvalOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hyperbolic,
    Paper,
    Specfun,
    Lfunc,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Hyperbolic, Suite::Paper, Suite::Specfun, Suite::Lfunc];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Hyperbolic => "hyperbolic",
            Suite::Paper => "paper",
            Suite::Specfun => "specfun",
            Suite::Lfunc => "lfunc",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Usage(format!("unknown suite '{s}'")))
    }
}

/// Suite names, comma-separated entries allowed; empty or `all` selects every suite.
pub fn parse_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for name in names.iter().flat_map(|n| n.as_ref().split(',')) {
        if name.trim().eq_ignore_ascii_case("all") {
            return Ok(Suite::ALL.to_vec());
        }
        let suite: Suite = name.parse()?;
        if !out.contains(&suite) {
            out.push(suite);
        }
    }
    if out.is_empty() {
        out = Suite::ALL.to_vec();
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub worst_margin: f64,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }

    pub fn failing_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.suites.iter().flat_map(|s| s.checks.iter()).filter(|c| !c.pass)
    }
}

pub fn run_verify(suites: &[Suite]) -> Result<VerifyReport> {
    run_verify_with(suites, &Faults::default())
}

pub fn run_verify_with(suites: &[Suite], faults: &Faults) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    for suite in suites {
        log::info!("running suite {}", suite.name());
        let checks = match suite {
            Suite::Hyperbolic => hyperbolic_suite()?,
            Suite::Paper => paper_suite(faults)?,
            Suite::Specfun => specfun_suite()?,
            Suite::Lfunc => lfunc_suite()?,
        };
        let worst_margin = checks.iter().map(|c| c.worst_margin).fold(f64::INFINITY, f64::min);
        reports.push(SuiteReport {
            suite: suite.name().to_string(),
            pass: checks.iter().all(|c| c.pass),
            worst_margin,
            checks,
        });
    }
    Ok(VerifyReport {
        version: VERSION.to_string(),
        pass: reports.iter().all(|r| r.pass),
        suites: reports,
    })
}

/// Exit status and report for suite names given on a command line. Unknown
/// names give status 2 and no report.
pub fn verify_exit_code<S: AsRef<str>>(names: &[S], faults: &Faults) -> (i32, Result<VerifyReport>) {
    let suites = match parse_suites(names) {
        Ok(s) => s,
        Err(e) => return (EXIT_USAGE, Err(e)),
    };
    match run_verify_with(&suites, faults) {
        Ok(report) => (report.exit_code(), Ok(report)),
        Err(e) => (EXIT_FAILURE, Err(e)),
    }
}

fn witness(input: String, lhs: f64, rhs: f64, margin: f64) -> Witness {
    Witness { input, lhs, rhs, margin }
}

fn finish(name: &str, grid: String, points: Vec<Witness>) -> CheckResult {
    let n = points.len();
    CheckResult::from_witnesses(name, grid, points, DEFAULT_TOL).with_samples(n)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI))
}

// ---------------------------------------------------------------------------
// hyperbolic

fn hyperbolic_suite() -> Result<Vec<CheckResult>> {
    let mut out = vec![
        strip_lower_bound_check()?,
        rectangle_lemma_check()?,
        round_trip_check()?,
        square_modulus_check()?,
        strip_center_line_check()?,
        schwarz_pick_check()?,
        domain_monotonicity_check()?,
        strip_vs_rectangle_check()?,
    ];
    out.extend(instance_family_checks()?);
    out.extend(elementary_checks()?);
    Ok(out)
}

/// `d(s0, s1; S) ≥ |s0 - s1|/a` for `Im s1 = T`.
fn strip_lower_bound_check() -> Result<CheckResult> {
    let mut r = rng(0x24);
    let mut points = Vec::with_capacity(10_000);
    for _ in 0..10_000 {
        let a = r.random_range(0.2..5.0);
        let t = r.random_range(-100.0..100.0);
        let x1 = r.random_range(-10.0..10.0);
        let s1 = Complex64::new(x1, t);
        let s0 = Complex64::new(
            x1 + r.random_range(-3.0..3.0) * a,
            t + r.random_range(-0.999..0.999) * a * PI / 4.0,
        );
        let lhs = strip_distance(s0, s1, t, a)?;
        let rhs = (s0 - s1).norm() / a;
        points.push(witness(format!("s0={s0} s1={s1} a={a}"), lhs, rhs, lhs - rhs));
    }
    Ok(finish("strip_distance_lower_bound", "10^4 random (s0, s1, a)".into(), points))
}

/// `d(x, σ0 - x; R) < σ0` on `R = (0, σ0) × (-π/4, π/4)`.
fn rectangle_lemma_check() -> Result<CheckResult> {
    let mut points = Vec::new();
    let x0 = 2f64.ln() / 2.0;
    for sigma0 in [1.1, 1.5, 2.0, 3.0, 5.0] {
        for i in 1..=50 {
            let x = x0 + (sigma0 / 2.0 - x0) * i as f64 / 50.0;
            let lhs = lemma25_distance(sigma0, x)?;
            points.push(witness(format!("sigma0={sigma0} x={x}"), lhs, sigma0, sigma0 - lhs));
        }
    }
    Ok(finish("rectangle_distance_bound", "sigma0 in {1.1,1.5,2,3,5}, 50 x each".into(), points))
}

fn random_rectangle(r: &mut ChaCha8Rng) -> Result<(RectangleDomain, Complex64)> {
    let lo = r.random_range(-2.0..2.0);
    let w = r.random_range(0.2..5.0);
    let h = w * r.random_range(-2.3f64..2.3).exp();
    let t_lo = r.random_range(-20.0..20.0);
    let rect = RectangleDomain::new(lo, lo + w, t_lo, t_lo + h)?;
    let c = Complex64::new(lo + w * r.random_range(0.1..0.9), t_lo + h * r.random_range(0.1..0.9));
    Ok((rect, c))
}

fn round_trip_check() -> Result<CheckResult> {
    let mut r = rng(0x77);
    let mut points = Vec::new();
    for i in 0..1000 {
        if i % 100 == 0 {
            points.reserve(100);
        }
        let (rect, c) = random_rectangle(&mut r)?;
        let map = build_rect_map(&rect, c)?;
        let z = random_in_disk(&mut r, 0.999);
        let s = map.inverse(z)?;
        let err = (map.forward(s) - z).norm();
        points.push(witness(format!("{rect:?} z={z}"), err, 1e-9, 1e-9 - err));
    }
    Ok(finish("conformal_round_trip", "10^3 random rectangles and disk points".into(), points))
}

fn square_modulus_check() -> Result<CheckResult> {
    let (k, _) = solve_modulus_for_ratio(1.0)?;
    let map = build_rect_map(&RectangleDomain::new(0.0, 1.0, 0.0, 1.0)?, Complex64::new(0.5, 0.5))?;
    let mut points = Vec::new();
    for (label, v) in [("solver", k), ("map", map.modulus())] {
        let err = (v - FRAC_1_SQRT_2).abs();
        points.push(witness(label.into(), v, FRAC_1_SQRT_2, 1e-9 - err));
    }
    for corner in map.rect().corners() {
        let err = (map.forward(corner).norm() - 1.0).abs();
        points.push(witness(format!("corner {corner}"), err, 1e-8, 1e-8 - err));
    }
    Ok(finish("square_modulus", "unit square".into(), points))
}

fn strip_center_line_check() -> Result<CheckResult> {
    let mut points = Vec::new();
    for t in [0.0, 14.0, -300.0] {
        let base = Complex64::new(0.0, t);
        for (sep, a, want) in [(1.0, 1.0, 1.0), (0.5, 2.0, 0.25)] {
            let d = strip_distance(base, base + sep, t, a)?;
            points.push(witness(format!("T={t} sep={sep} a={a}"), d, want, 1e-12 - (d - want).abs()));
        }
    }
    Ok(finish("strip_center_line", "center-line pairs".into(), points))
}

fn schwarz_pick_check() -> Result<CheckResult> {
    let maps = schwarz_pick_maps();
    let mut r = rng(0x5c);
    let mut points = Vec::new();
    for i in 0..1000 {
        let f = &maps[i % maps.len()];
        let (z1, z2) = (random_in_disk(&mut r, 0.95), random_in_disk(&mut r, 0.95));
        let before = disk_distance(z1, z2)?;
        let after = disk_distance(f.eval(z1), f.eval(z2))?;
        points.push(witness(format!("map {} z1={z1} z2={z2}", i % maps.len()), after, before, before - after + 1e-12));
    }
    Ok(finish("schwarz_pick_contraction", "10^3 random pairs over the self-map family".into(), points))
}

fn domain_monotonicity_check() -> Result<CheckResult> {
    let mut r = rng(0x6d);
    let mut points = Vec::new();
    for _ in 0..1000 {
        let (inner, _) = random_rectangle(&mut r)?;
        let grow = |r: &mut ChaCha8Rng| r.random_range(0.0..1.0);
        let outer = RectangleDomain::new(
            inner.sigma_lo - grow(&mut r),
            inner.sigma_hi + grow(&mut r),
            inner.t_lo - grow(&mut r),
            inner.t_hi + grow(&mut r),
        )?;
        let pick = |r: &mut ChaCha8Rng| {
            Complex64::new(
                inner.sigma_lo + inner.width() * r.random_range(0.05..0.95),
                inner.t_lo + inner.height() * r.random_range(0.05..0.95),
            )
        };
        let (w1, w2) = (pick(&mut r), pick(&mut r));
        let small = rect_distance(w1, w2, &inner)?;
        let large = rect_distance(w1, w2, &outer)?;
        let back = rect_distance(w2, w1, &inner)?;
        let margin = (small - large).min(1e-9 - (small - back).abs());
        points.push(witness(format!("w1={w1} w2={w2}"), large, small, margin));
    }
    Ok(finish("domain_monotonicity_and_symmetry", "10^3 nested rectangle pairs".into(), points))
}

/// A long rectangle around the strip's center line gives nearly the strip distance.
fn strip_vs_rectangle_check() -> Result<CheckResult> {
    let mut r = rng(0x51);
    let mut points = Vec::new();
    for _ in 0..200 {
        let a = r.random_range(0.3..3.0);
        let t = r.random_range(-50.0..50.0);
        let half_h = a * PI / 4.0;
        let half_len = 30.0 * half_h * 2.0;
        let rect = RectangleDomain::new(-half_len, half_len, t - half_h, t + half_h)?;
        let w1 = Complex64::new(r.random_range(-0.5..0.5) * a, t + r.random_range(-0.3..0.3) * half_h);
        let w2 = w1 + random_in_disk(&mut r, a);
        if !rect.contains(w2) || (w2.im - t).abs() > 0.9 * half_h {
            continue;
        }
        let ds = strip_distance(w1, w2, t, a)?;
        let dr = rect_distance(w1, w2, &rect)?;
        let rel = (dr - ds).abs() / ds.max(1e-12);
        points.push(witness(format!("a={a} w1={w1} w2={w2}"), dr, ds, 0.02 - rel));
    }
    Ok(finish("strip_vs_long_rectangle", "aspect ratio 60, pairs near the center".into(), points))
}

fn instance_family_checks() -> Result<Vec<CheckResult>> {
    let mut borel = Vec::new();
    for inst in borel_family() {
        let o = lemma_borel_outcome(&inst.f, inst.r1, inst.r2, 10_000)?;
        borel.push(witness(format!("{:?} r1={} r2={}", inst.f, inst.r1, inst.r2), o.lhs, o.rhs, o.margin));
    }
    let mut siegel = Vec::new();
    for inst in siegel_family() {
        let o = lemma_siegel_outcome(&inst, 10_000)?;
        siegel.push(witness(format!("{:?} lambda={} xi={}", inst.f, inst.lambda, inst.xi), o.lhs, o.rhs, o.margin));
    }
    let mut rad = Vec::new();
    for inst in rademacher_family() {
        let o = lemma_rademacher_outcome(&inst, 10_000)?;
        rad.push(witness(format!("{:?} a={} b={}", inst.g, inst.a, inst.b), o.lhs, o.rhs, o.margin));
    }
    Ok(vec![
        finish("borel_caratheodory_family", "documented instances, 10^4 angles".into(), borel),
        finish("siegel_rectangle_family", "documented instances, 10^4 samples".into(), siegel),
        finish("rademacher_strip_family", "documented instances, 10^4 boundary samples".into(), rad),
    ])
}

fn elementary_checks() -> Result<Vec<CheckResult>> {
    let tanh_pts = (1..=1000)
        .map(|i| {
            let x = 0.936 * i as f64 / 1001.0;
            let l = -(-x).ln_1p();
            let rhs = l / (1.0 + l);
            witness(format!("x={x}"), x.tanh(), rhs, x.tanh() - rhs)
        })
        .collect();
    let corollary = (0..1000)
        .map(|i| {
            let m = 10f64.powf(6.0 * i as f64 / 999.0);
            let r1 = (-(-1.0 / (m + 1.0)).exp_m1()).tanh();
            witness(format!("m={m}"), 1.0 / r1, m + 2.0, (m + 2.0 - 1.0 / r1) / (m + 2.0))
        })
        .collect();
    let mut r = rng(0x18);
    let mut log1p = Vec::new();
    for _ in 0..1000 {
        let w = random_in_disk(&mut r, 0.99);
        let lhs = (1.0 + w).ln().norm();
        let rhs = w.norm() / (1.0 - w.norm());
        if !check_log1p_bound(w)? {
            log1p.push(witness(format!("w={w}"), lhs, rhs, -1.0));
        } else {
            log1p.push(witness(format!("w={w}"), lhs, rhs, rhs - lhs + 1e-12));
        }
    }
    Ok(vec![
        finish("tanh_inequality", "1000 points of (0, 0.936)".into(), tanh_pts),
        finish("tanh_corollary", "m log-spaced over [1, 1e6]".into(), corollary),
        finish("log1p_bound", "10^3 random |w| < 0.99".into(), log1p),
    ])
}

// ---------------------------------------------------------------------------
// paper

fn complex_character_mod5() -> Result<LFunctionSpec> {
    let chi = primitive_characters(5)?
        .into_iter()
        .find(|c| !c.is_real())
        .ok_or_else(|| Error::domain("no complex character mod 5"))?;
    make_dirichlet(&chi)
}

/// zeta, χ mod 3, χ mod 4, a complex χ mod 5, Dedekind D = 5 and D = -20.
pub(crate) fn strip_specs() -> Result<Vec<LFunctionSpec>> {
    Ok(vec![
        make_zeta(),
        make_dirichlet(&quadratic_character(-3)?)?,
        make_dirichlet(&quadratic_character(-4)?)?,
        complex_character_mod5()?,
        make_dedekind_quadratic(5)?,
        make_dedekind_quadratic(-20)?,
    ])
}

fn paper_suite(faults: &Faults) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for spec in strip_specs()? {
        let grid = default_strip_grid(&spec);
        out.push(check_lemma22(&spec, &StripIndices::default(), &grid)?);
        let max = StripIndices::maximal(&spec);
        if max != StripIndices::default() {
            out.push(check_lemma22(&spec, &max, &grid)?);
        }
        let a = if spec.degree() > 1 { 0.2 } else { 0.1 };
        out.push(check_lemma26(&spec, a, 1000)?);
    }
    let grid = default_sigma_grid();
    out.push(check_appendix_logderiv_with(&grid, faults)?);
    out.push(check_appendix_fracint_with(&grid, faults)?);
    out.push(check_zeta_sandwich_with(&grid, faults)?);
    out.push(check_appendix_sum_bound_with(&grid, faults)?);
    Ok(out)
}

// ---------------------------------------------------------------------------
// specfun

fn specfun_suite() -> Result<Vec<CheckResult>> {
    let opts = EvalOptions::default();
    let mut r = rng(0xf1);
    let mut reflection = Vec::new();
    for _ in 0..10_000 {
        let s = Complex64::new(r.random_range(0.001..0.999), r.random_range(-30.0..30.0));
        let lhs = (log_gamma(s)? + log_gamma(1.0 - s)?).exp();
        let rhs = PI / (s * PI).sin();
        let rel = (lhs - rhs).norm() / rhs.norm();
        reflection.push(witness(format!("s={s}"), rel, 1e-9, 1e-9 - rel));
    }

    let mut direct = Vec::new();
    for _ in 0..100 {
        let s = Complex64::new(r.random_range(1.5..5.0), r.random_range(-50.0..50.0));
        let em = riemann_zeta(s, &opts)?;
        let ds = direct_zeta(s);
        let err = (em - ds).norm();
        direct.push(witness(format!("s={s}"), err, 1e-12, 1e-12 - err));
    }

    let mut frac = Vec::new();
    for sigma in [1.5, 2.0, 3.0, 5.0] {
        let z = riemann_zeta(Complex64::new(sigma, 0.0), &opts)?.re;
        let via = sigma / (sigma - 1.0) - sigma * fractional_integral_quadrature(sigma)?;
        let err = (z - via).abs();
        frac.push(witness(format!("sigma={sigma}"), err, 1e-8, 1e-8 - err));
    }

    let mut hurwitz = Vec::new();
    for q in [3u32, 4, 5, 7] {
        let mut n = 0;
        while n < 20 {
            let s = Complex64::new(r.random_range(-1.5..3.0), r.random_range(-30.0..30.0));
            if (s - 1.0).norm() < 0.1 {
                continue;
            }
            n += 1;
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 1..=q {
                acc += hurwitz_zeta(s, a as f64 / q as f64, &opts)?;
            }
            let lhs = acc * (-s * (q as f64).ln()).exp();
            let rhs = riemann_zeta(s, &opts)?;
            let err = (lhs - rhs).norm() / rhs.norm().max(1.0);
            hurwitz.push(witness(format!("q={q} s={s}"), err, 1e-10, 1e-10 - err));
        }
    }

    let mut sn = Vec::new();
    for _ in 0..1000 {
        let z = Complex64::new(r.random_range(-3.0..3.0), r.random_range(-1.0..1.0));
        let (s0, _, _) = jacobi_sncndn(z, 0.0)?;
        let err0 = (s0 - z.sin()).norm() / z.sin().norm().max(1.0);
        let k = r.random_range(0.0..0.999);
        let (s, c, d) = jacobi_sncndn(z, k)?;
        let scale = s.norm_sqr().max(1.0);
        let e1 = (s * s + c * c - 1.0).norm() / scale;
        let e2 = (d * d + s * s * k * k - 1.0).norm() / scale;
        let err = err0.max(e1).max(e2);
        sn.push(witness(format!("z={z} k={k}"), err, 1e-9, 1e-9 - err));
    }

    Ok(vec![
        finish("log_gamma_reflection", "10^4 random s in the strip 0 < Re s < 1".into(), reflection),
        finish("zeta_vs_direct_series", "100 random s, Re s in [1.5, 5]".into(), direct),
        finish("zeta_fractional_part_identity", "sigma in {1.5, 2, 3, 5}".into(), frac),
        finish("hurwitz_decomposition", "q in {3,4,5,7}, 20 random s each".into(), hurwitz),
        finish("jacobi_identities", "10^3 random z and k".into(), sn),
    ])
}

/// `Σ_{n ≤ N} n^{-s}` plus the first Euler–Maclaurin tail terms, `N = 10⁵`.
fn direct_zeta(s: Complex64) -> Complex64 {
    const N: usize = 100_000;
    let mut acc = CompensatedSum::new();
    for n in (1..=N).rev() {
        acc.add((-s * (n as f64).ln()).exp());
    }
    let nf = N as f64;
    let np = (-s * nf.ln()).exp();
    acc.add(np * nf / (s - 1.0) - np * 0.5 + s * np / (12.0 * nf));
    acc.value()
}

// ---------------------------------------------------------------------------
// lfunc

pub(crate) fn functional_equation_specs() -> Result<Vec<LFunctionSpec>> {
    let mut specs = vec![make_zeta()];
    for q in [3, 4, 5, 7, 8, 11] {
        for chi in primitive_characters(q)? {
            specs.push(make_dirichlet(&chi)?);
        }
    }
    for d in [5, -3, -4] {
        specs.push(make_dedekind_quadratic(d)?);
    }
    Ok(specs)
}

fn lfunc_suite() -> Result<Vec<CheckResult>> {
    let specs = functional_equation_specs()?;
    let fe_points = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut r = rng(0xfe00 + i as u64);
            let mut pts = Vec::with_capacity(1000);
            for _ in 0..1000 {
                let s = Complex64::new(r.random_range(-0.5..1.5), r.random_range(0.0..50.0));
                let res = functional_equation_residual(spec, s)?;
                pts.push(witness(format!("{} s={s}", spec.label()), res, 1e-8, 1e-8 - res));
            }
            Ok(pts)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut coeff = Vec::new();
    let mut euler = Vec::new();
    let mut order = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let m = spec.degree() as f64;
        let mut worst = f64::INFINITY;
        let mut worst_n = 1;
        for n in 1..=10_000u64 {
            let bound = m * von_mangoldt(n) * (n as f64).powf(spec.theta());
            let margin = bound - lambda_coeff(spec, n).norm();
            if margin < worst {
                worst = margin;
                worst_n = n;
            }
        }
        let l = lambda_coeff(spec, worst_n).norm();
        coeff.push(witness(format!("{} n={worst_n}", spec.label()), l, l + worst, worst + 1e-12));

        let mut r = rng(0xe0 + i as u64);
        for _ in 0..50 {
            let s = Complex64::new(r.random_range(2.5..5.0), r.random_range(-50.0..50.0));
            let e = euler_product(spec, s, 100_000)?;
            let v = evaluate(spec, s)?;
            let err = (e - v).norm();
            euler.push(witness(format!("{} s={s}", spec.label()), err, 1e-8, 1e-8 - err));
        }

        let probed = probe_order_at_zero(spec)?;
        let stored = spec.order_at_zero();
        let margin = if probed == stored { 1.0 } else { -1.0 };
        order.push(witness(spec.label(), probed as f64, stored as f64, margin));
    }

    let mut dedekind = Vec::new();
    let mut r = rng(0xdd);
    for d in [5i64, -3, -4, 8, -7, 13] {
        let spec = make_dedekind_quadratic(d)?;
        let chi = make_dirichlet(&quadratic_character(d)?)?;
        let zeta = make_zeta();
        for _ in 0..20 {
            let s = Complex64::new(r.random_range(-1.5..3.0), r.random_range(-30.0..30.0));
            if (s - 1.0).norm() < 0.1 {
                continue;
            }
            let lhs = evaluate(&spec, s)?;
            let rhs = evaluate(&zeta, s)? * evaluate(&chi, s)?;
            let err = (lhs - rhs).norm() / rhs.norm().max(1.0);
            dedekind.push(witness(format!("D={d} s={s}"), err, 1e-10, 1e-10 - err));
        }
        // coefficients multiply as Dirichlet series
        for n in [1u64, 6, 12, 35, 97] {
            let conv: Complex64 = (1..=n)
                .filter(|k| n % k == 0)
                .map(|k| dirichlet_coefficient(&chi, k))
                .sum();
            let err = (conv - dirichlet_coefficient(&spec, n)).norm();
            dedekind.push(witness(format!("D={d} a({n})"), err, 0.0, -err));
        }
    }

    let mut closure = Vec::new();
    for q in 3..=500u64 {
        let group = CharacterGroup::new(q)?;
        for chi in group.primitive_characters() {
            let spec = make_dirichlet(&chi)?;
            let ok = spec.check_invariants().is_ok();
            let dev = (spec.root_number().norm() - 1.0).abs();
            closure.push(witness(spec.label(), dev, 1e-12, if ok { 1e-12 - dev } else { -1.0 }));
        }
    }

    Ok(vec![
        finish("functional_equation", "10^3 random s per built-in spec".into(), fe_points),
        finish("coefficient_bound", "n <= 10^4 per spec".into(), coeff),
        finish("euler_product", "50 random s with Re s >= 2.5, p <= 10^5".into(), euler),
        finish("order_at_zero", "limit probe per spec".into(), order),
        finish("dedekind_factorization", "values and coefficients".into(), dedekind),
        finish("spec_invariants", "all primitive characters with q <= 500".into(), closure),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(parse_suites::<&str>(&[]).unwrap(), Suite::ALL.to_vec());
        assert_eq!(parse_suites(&["paper,specfun"]).unwrap(), vec![Suite::Paper, Suite::Specfun]);
        assert_eq!(parse_suites(&["all"]).unwrap(), Suite::ALL.to_vec());
        assert!(matches!(parse_suites(&["geometry"]), Err(Error::Usage(_))));
        let (code, report) = verify_exit_code(&["bogus"], &Faults::default());
        assert_eq!(code, EXIT_USAGE);
        assert!(report.is_err());
    }

    #[test]
    fn direct_zeta_matches_known_value() {
        let v = direct_zeta(Complex64::new(2.0, 0.0));
        assert!((v.re - PI * PI / 6.0).abs() < 1e-13);
    }
}
