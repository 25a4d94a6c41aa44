//! Grid checks of the explicit inequalities used for L-functions: the strip
//! bound for `L(s)`, the log-ratio bound near the line of absolute
//! convergence, and the elementary bounds on `ζ(σ)` and `-ζ'/ζ(σ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfunc::{evaluate, evaluate_regularized, LFunctionSpec};
use crate::specfun::{
    primes_up_to, riemann_zeta, riemann_zeta_with_derivative, sum_real, EvalOptions,
};

/// Margins above `-DEFAULT_TOL` count as passing.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Required agreement between the two computations of the fractional-part integral.
pub const DUAL_ROUTE_TOL: f64 = 1e-8;
const MAX_WITNESSES: usize = 20;
const LEMMA26_SEED: u64 = 0x26_5eed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub grid: String,
    pub samples: usize,
    pub worst_margin: f64,
    pub pass: bool,
    /// Failing points, at most 20; empty when the check passes.
    pub witnesses: Vec<Witness>,
}

impl CheckResult {
    pub fn from_witnesses(name: &str, grid: String, points: Vec<Witness>, tol: f64) -> Self {
        let worst_margin = points.iter().map(|w| w.margin).fold(f64::INFINITY, f64::min);
        let pass = !points.is_empty() && worst_margin > -tol;
        let witnesses = points
            .into_iter()
            .filter(|w| !(w.margin > -tol))
            .take(MAX_WITNESSES)
            .collect::<Vec<_>>();
        CheckResult { name: name.to_string(), grid, samples: 0, worst_margin, pass, witnesses }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }
}

/// Deliberate perturbations for exercising failure paths.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Faults {
    /// Added to every real `ζ(σ)` evaluation in the appendix checks.
    pub zeta_offset: f64,
}

fn zeta_real(sigma: f64, faults: &Faults) -> Result<f64> {
    Ok(riemann_zeta(Complex64::new(sigma, 0.0), &EvalOptions::default())?.re + faults.zeta_offset)
}

/// `count` points with `σ - 1` log-spaced over `[lo - 1, hi - 1]`.
pub fn log_sigma_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 1.0 && hi > lo) || count < 2 {
        return Err(Error::domain(format!("bad sigma grid [{lo}, {hi}] x {count}")));
    }
    let (a, b) = ((lo - 1.0).ln(), (hi - 1.0).ln());
    Ok((0..count)
        .map(|i| 1.0 + (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect())
}

/// 200 points over `[1.001, 50]`.
pub fn default_sigma_grid() -> Vec<f64> {
    log_sigma_grid(1.001, 50.0, 200).expect("static grid")
}

fn describe_sigma_grid(grid: &[f64]) -> String {
    let lo = grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    format!("{} sigma values in [{lo}, {hi}]", grid.len())
}

fn check_sigma_domain(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("empty sigma grid"));
    }
    match grid.iter().find(|&&s| !(s > 1.0) || !s.is_finite()) {
        Some(s) => Err(Error::domain(format!("sigma = {s} must exceed 1"))),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Strip bound

const STRIP_SHIFT: f64 = 4.302_775_637_731_995; // (5 + √13) / 2

/// Index sets for the strip bound, 0-based into `spec.mu()`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StripIndices {
    pub d: u32,
    pub j1: Vec<usize>,
    pub j2: Vec<usize>,
}

fn allowed_j1(mu: Complex64) -> bool {
    mu.re > -1.0 && mu.re <= 1.5 && mu != Complex64::new(0.0, 0.0)
}

impl StripIndices {
    /// Largest admissible choice: `d = ord_{s=0} L`, `J1` and `J2` maximal.
    pub fn maximal(spec: &LFunctionSpec) -> Self {
        let mu = spec.mu();
        let j1: Vec<usize> = (0..mu.len()).filter(|&j| allowed_j1(mu[j])).collect();
        let j2 = j1.iter().copied().filter(|&j| mu[j].re <= -0.5).collect();
        StripIndices { d: spec.order_at_zero().max(0) as u32, j1, j2 }
    }

    pub fn validate(&self, spec: &LFunctionSpec) -> Result<()> {
        let mu = spec.mu();
        if self.d as i32 > spec.order_at_zero() {
            return Err(Error::InvalidIndexSet(format!(
                "d = {} exceeds the order {} at s = 0",
                self.d,
                spec.order_at_zero()
            )));
        }
        let mut seen = vec![false; mu.len()];
        for &j in &self.j1 {
            if j >= mu.len() || seen[j] || !allowed_j1(mu[j]) {
                return Err(Error::InvalidIndexSet(format!("index {j} not admissible in J1")));
            }
            seen[j] = true;
        }
        let mut seen2 = vec![false; mu.len()];
        for &j in &self.j2 {
            if j >= mu.len() || seen2[j] || !seen[j] || mu[j].re > -0.5 {
                return Err(Error::InvalidIndexSet(format!("index {j} not admissible in J2")));
            }
            seen2[j] = true;
        }
        Ok(())
    }
}

/// `g(s) = L(s)(s-1)^r / (s^d Π_{J1}(s+μ_j) Π_{J2}(s+2+μ_j))`.
pub fn strip_function(spec: &LFunctionSpec, idx: &StripIndices, s: Complex64) -> Result<Complex64> {
    let mu = spec.mu();
    let mut den = s.powi(idx.d as i32);
    for &j in &idx.j1 {
        den *= s + mu[j];
    }
    for &j in &idx.j2 {
        den *= s + 2.0 + mu[j];
    }
    Ok(evaluate_regularized(spec, s)? / den)
}

/// `e^{3m} |N Π_j (s + (5+√13)/2 + μ_j)/(2π)|^{(5/2-σ)/2} |s-4|^r`.
pub fn strip_bound(spec: &LFunctionSpec, s: Complex64) -> f64 {
    let m = spec.degree() as f64;
    let prod: f64 = spec
        .mu()
        .iter()
        .map(|&mu| (s + STRIP_SHIFT + mu).norm() / (2.0 * PI))
        .product();
    let base = spec.conductor() as f64 * prod;
    (3.0 * m).exp() * base.powf((2.5 - s.re) / 2.0) * (s - 4.0).norm().powi(spec.pole_order() as i32)
}

/// Points of `[-3/2, 5/2] × [-t_max, t_max]`, nudged 0.1 upward when within
/// 0.05 of `0`, `1`, `-μ_j` or `-2-μ_j`.
pub fn strip_grid(spec: &LFunctionSpec, n_sigma: usize, n_t: usize, t_max: f64) -> Vec<Complex64> {
    let mut avoid = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    for &mu in spec.mu() {
        avoid.push(-mu);
        avoid.push(-mu - 2.0);
    }
    let mut out = Vec::with_capacity(n_sigma * n_t);
    for i in 0..n_sigma {
        let sigma = -1.5 + 4.0 * i as f64 / (n_sigma - 1) as f64;
        for j in 0..n_t {
            let t = -t_max + 2.0 * t_max * j as f64 / (n_t - 1) as f64;
            let mut s = Complex64::new(sigma, t);
            while avoid.iter().any(|&a| (s - a).norm() < 0.05) {
                s.im += 0.1;
            }
            out.push(s);
        }
    }
    out
}

/// The default 500-point grid.
pub fn default_strip_grid(spec: &LFunctionSpec) -> Vec<Complex64> {
    strip_grid(spec, 20, 25, 30.0)
}

/// Check `|g(s)| < bound(s)` on the grid; margins are `log bound - log|g|`.
pub fn check_lemma22(
    spec: &LFunctionSpec,
    idx: &StripIndices,
    grid: &[Complex64],
) -> Result<CheckResult> {
    idx.validate(spec)?;
    if let Some(s) = grid.iter().find(|s| !(s.re >= -1.5 && s.re <= 2.5)) {
        return Err(Error::domain(format!("grid point {s} outside -3/2 <= sigma <= 5/2")));
    }
    let points = grid
        .par_iter()
        .map(|&s| {
            let lhs = strip_function(spec, idx, s)?.norm();
            let rhs = strip_bound(spec, s);
            Ok(Witness { input: format!("{s}"), lhs, rhs, margin: rhs.ln() - lhs.ln() })
        })
        .collect::<Result<Vec<_>>>()?;
    let grid_desc = format!(
        "{} points of the strip -3/2 <= sigma <= 5/2 for {} (d={}, J1={:?}, J2={:?})",
        grid.len(),
        spec.label(),
        idx.d,
        idx.j1,
        idx.j2
    );
    Ok(CheckResult::from_witnesses("strip_bound", grid_desc, points, DEFAULT_TOL).with_samples(grid.len()))
}

// ---------------------------------------------------------------------------
// Log-ratio bound

/// Continuously accumulated `log(L(s0)/L(s1))` along the segment `[s1, s0]`,
/// refining until every step changes the logarithm by less than 0.5.
pub fn log_ratio_along_segment(spec: &LFunctionSpec, s1: Complex64, s0: Complex64) -> Result<Complex64> {
    if s0 == s1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut n = 8usize;
    loop {
        if let Some(acc) = accumulate_log_steps(spec, s1, s0, n)? {
            return Ok(acc);
        }
        if n >= 1 << 16 {
            return Err(Error::domain("log ratio did not settle along the segment"));
        }
        n *= 2;
    }
}

/// Sum of `log(L(s_k)/L(s_{k-1}))` over `n` equal steps, or `None` if some
/// step is too large to pin the branch.
fn accumulate_log_steps(
    spec: &LFunctionSpec,
    s1: Complex64,
    s0: Complex64,
    n: usize,
) -> Result<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = evaluate(spec, s1)?;
    for k in 1..=n {
        let s = s1 + (s0 - s1) * (k as f64 / n as f64);
        let cur = evaluate(spec, s)?;
        let step = (cur / prev).ln();
        if step.norm() >= 0.5 {
            return Ok(None);
        }
        acc += step;
        prev = cur;
    }
    Ok(Some(acc))
}

/// `(1 - e^{-1/m}) a`.
pub fn lemma26_radius(spec: &LFunctionSpec, a: f64) -> f64 {
    -(-1.0 / spec.degree() as f64).exp_m1() * a
}

/// Random `s1` on `Re s = 1 + ϑ + a`, `|Im s1| ≤ 50`, and `s0` uniform in the
/// admissible disk; checks `|log(L(s0)/L(s1))| < 1` and that the accumulated
/// logarithm differs from the endpoint logarithms by a multiple of `2πi`.
pub fn check_lemma26_seeded(spec: &LFunctionSpec, a: f64, trials: usize, seed: u64) -> Result<CheckResult> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("a = {a} must be positive")));
    }
    let radius = lemma26_radius(spec, a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Complex64, Complex64)> = (0..trials)
        .map(|_| {
            let s1 = Complex64::new(1.0 + spec.theta() + a, rng.random_range(-50.0..50.0));
            let rho = radius * rng.random_range(0.0..1.0f64).sqrt();
            let phi = rng.random_range(0.0..2.0 * PI);
            (s1, s1 + Complex64::from_polar(rho, phi))
        })
        .collect();
    let points = pairs
        .par_iter()
        .map(|&(s1, s0)| {
            let acc = log_ratio_along_segment(spec, s1, s0)?;
            let direct = evaluate(spec, s0)?.ln() - evaluate(spec, s1)?.ln();
            let winding = (acc - direct).im / (2.0 * PI);
            let branch_ok = (acc - direct).re.abs() < 1e-8 && (winding - winding.round()).abs() < 1e-8;
            let lhs = acc.norm();
            let margin = if branch_ok { 1.0 - lhs } else { -1.0 };
            Ok(Witness { input: format!("s1={s1} s0={s0}"), lhs, rhs: 1.0, margin })
        })
        .collect::<Result<Vec<_>>>()?;
    let grid = format!("{trials} random pairs for {} with a={a}, radius={radius}", spec.label());
    Ok(CheckResult::from_witnesses("log_ratio_bound", grid, points, DEFAULT_TOL).with_samples(trials))
}

pub fn check_lemma26(spec: &LFunctionSpec, a: f64, trials: usize) -> Result<CheckResult> {
    check_lemma26_seeded(spec, a, trials, LEMMA26_SEED)
}

// ---------------------------------------------------------------------------
// Appendix inequalities

const LAMBDA_CUTOFF: usize = 1_000_000;

/// `(n, Λ(n))` for prime powers `n ≤ limit`.
fn prime_power_table(limit: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for p in primes_up_to(limit) {
        let lp = (p as f64).ln();
        let mut q = p;
        loop {
            out.push((q as f64, lp));
            match q.checked_mul(p) {
                Some(next) if next <= limit as u64 => q = next,
                _ => break,
            }
        }
    }
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    out
}

/// `Σ_{n ≤ N} Λ(n) n^{-σ}` and the bound `∫_N^∞ x^{-σ} log x dx` on the rest.
fn lambda_series_bracket(table: &[(f64, f64)], sigma: f64) -> (f64, f64) {
    // smallest terms first
    let partial = sum_real(table.iter().map(|&(n, lam)| lam * n.powf(-sigma)));
    let n = LAMBDA_CUTOFF as f64;
    let e = sigma - 1.0;
    let tail = n.powf(-e) * (n.ln() / e + 1.0 / (e * e));
    (partial, tail)
}

/// `-ζ'/ζ(σ)` from the differentiated Euler–Maclaurin formula.
pub fn neg_log_derivative_zeta(sigma: f64, faults: &Faults) -> Result<f64> {
    let (z, dz) = riemann_zeta_with_derivative(Complex64::new(sigma, 0.0), &EvalOptions::default())?;
    Ok(-dz.re / (z.re + faults.zeta_offset))
}

/// `-ζ'/ζ(σ) < 1/(σ-1)`. The Euler–Maclaurin value must also lie inside the
/// bracket given by the von Mangoldt series to 10⁶ plus its tail bound.
pub fn check_appendix_logderiv_with(grid: &[f64], faults: &Faults) -> Result<CheckResult> {
    check_sigma_domain(grid)?;
    let table = prime_power_table(LAMBDA_CUTOFF);
    let points = grid
        .par_iter()
        .map(|&sigma| {
            let lhs = neg_log_derivative_zeta(sigma, faults)?;
            let rhs = 1.0 / (sigma - 1.0);
            let (partial, tail) = lambda_series_bracket(&table, sigma);
            let slack = 1e-10 * partial.max(1.0);
            let route = (lhs - partial + slack).min(partial + tail + slack - lhs);
            Ok(Witness { input: format!("sigma={sigma}"), lhs, rhs, margin: (rhs - lhs).min(route) })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    Ok(CheckResult::from_witnesses("zeta_log_derivative", describe_sigma_grid(grid), points, DEFAULT_TOL)
        .with_samples(n))
}

pub fn check_appendix_logderiv(grid: &[f64]) -> Result<CheckResult> {
    check_appendix_logderiv_with(grid, &Faults::default())
}

const FRACINT_SPLIT: usize = 1000;

/// `∫_1^∞ {u} u^{-σ-1} du` by quadrature on each unit interval of
/// `[1, 1000]` and an Euler–Maclaurin expansion of the tail.
pub fn fractional_integral_quadrature(sigma: f64) -> Result<f64> {
    if !(sigma > 1.0) {
        return Err(Error::domain(format!("sigma = {sigma} must exceed 1")));
    }
    let pieces = (1..FRACINT_SPLIT).map(|n| {
        let nf = n as f64;
        quadrature::integrate(|u: f64| (u - nf) * u.powf(-sigma - 1.0), nf, nf + 1.0, 1e-15).integral
    });
    // {u} = 1/2 + P1(u); ∫_N^∞ P1 f = -f(N)/12 + f''(N)/720 - ... for f = u^{-σ-1}
    let n = FRACINT_SPLIT as f64;
    let f = n.powf(-sigma - 1.0);
    let f2 = (sigma + 1.0) * (sigma + 2.0) * f / (n * n);
    let tail = n.powf(-sigma) / (2.0 * sigma) - f / 12.0 + f2 / 720.0;
    Ok(sum_real(pieces.chain(std::iter::once(tail))))
}

/// The same integral from `ζ(σ) = σ/(σ-1) - σ I(σ)`.
pub fn fractional_integral_from_zeta(sigma: f64, faults: &Faults) -> Result<f64> {
    Ok((sigma / (sigma - 1.0) - zeta_real(sigma, faults)?) / sigma)
}

/// `I(σ) < 1/(2σ-1)` by both routes, which must agree to 1e-8.
pub fn check_appendix_fracint_with(grid: &[f64], faults: &Faults) -> Result<CheckResult> {
    check_sigma_domain(grid)?;
    let points = grid
        .par_iter()
        .map(|&sigma| {
            let quad = fractional_integral_quadrature(sigma)?;
            let via_zeta = fractional_integral_from_zeta(sigma, faults)?;
            let rhs = 1.0 / (2.0 * sigma - 1.0);
            let agreement = DUAL_ROUTE_TOL - (quad - via_zeta).abs();
            let margin = (rhs - quad).min(rhs - via_zeta).min(agreement);
            Ok(Witness { input: format!("sigma={sigma}"), lhs: quad.max(via_zeta), rhs, margin })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    Ok(CheckResult::from_witnesses("fractional_part_integral", describe_sigma_grid(grid), points, DEFAULT_TOL)
        .with_samples(n))
}

pub fn check_appendix_fracint(grid: &[f64]) -> Result<CheckResult> {
    check_appendix_fracint_with(grid, &Faults::default())
}

/// `σ²/(2σ²-3σ+1) < ζ(σ) < σ/(σ-1)`; the margin is the smaller gap.
pub fn check_zeta_sandwich_with(grid: &[f64], faults: &Faults) -> Result<CheckResult> {
    check_sigma_domain(grid)?;
    let points = grid
        .par_iter()
        .map(|&sigma| {
            let z = zeta_real(sigma, faults)?;
            let lower = sigma * sigma / (2.0 * sigma * sigma - 3.0 * sigma + 1.0);
            let upper = sigma / (sigma - 1.0);
            let margin = (z - lower).min(upper - z);
            Ok(Witness { input: format!("sigma={sigma}"), lhs: z, rhs: upper, margin })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    Ok(CheckResult::from_witnesses("zeta_sandwich", describe_sigma_grid(grid), points, DEFAULT_TOL)
        .with_samples(n))
}

pub fn check_zeta_sandwich(grid: &[f64]) -> Result<CheckResult> {
    check_zeta_sandwich_with(grid, &Faults::default())
}

/// The series step of the fractional-part argument needs
/// `S(σ) = Σ_{n≥2} (n/σ)(n^{-σ} - (n+1)^{-σ}) ≥ 3^{1-σ}/(σ-1)`, where
/// `S(σ) = (2^{1-σ} + ζ(σ) - 1 - 2^{-σ})/σ`; the closing inequality
/// `1/(σ-1) - (1-2^{-σ})/σ - 3^{1-σ}/(σ-1) < 1/(2σ-1)` is checked as well.
/// Margins are relative.
pub fn check_appendix_sum_bound_with(grid: &[f64], faults: &Faults) -> Result<CheckResult> {
    check_sigma_domain(grid)?;
    let points = grid
        .par_iter()
        .map(|&sigma| {
            let z = zeta_real(sigma, faults)?;
            let e = sigma - 1.0;
            let p2 = 2f64.powf(-sigma);
            let series = (2.0 * p2 + z - 1.0 - p2) / sigma;
            let lower = 3f64.powf(-e) / e;
            let closing = 1.0 / e - (1.0 - p2) / sigma - lower;
            let target = 1.0 / (2.0 * sigma - 1.0);
            // both sides decay like 2^{-σ}; compare relatively
            let margin = ((series - lower) / series).min((target - closing) / target);
            Ok(Witness { input: format!("sigma={sigma}"), lhs: series, rhs: lower, margin })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    Ok(CheckResult::from_witnesses("fractional_part_series_step", describe_sigma_grid(grid), points, DEFAULT_TOL)
        .with_samples(n))
}

pub fn check_appendix_sum_bound(grid: &[f64]) -> Result<CheckResult> {
    check_appendix_sum_bound_with(grid, &Faults::default())
}
