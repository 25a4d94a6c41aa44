//! Zeros on the critical line: a real rotation of the completed function,
//! argument-principle counts, sign-change scans and gap statistics.

use std::f64::consts::{E, PI, TAU};
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfunc::{
    analytic_conductor, analytic_conductor_pi_normalized, evaluate, evaluate_regularized,
    log_gamma_factor, Family, LFunctionSpec,
};

/// Default sign-change sampling step.
pub const DEFAULT_STEP: f64 = 0.05;
/// Bisection stops once the bracket is narrower than this.
pub const REFINE_TOL: f64 = 1e-9;
/// A zero closer than this to a horizontal contour edge forces a jitter.
pub const EDGE_CLEARANCE: f64 = 1e-4;
const EDGE_JITTER: f64 = 1e-3;

fn principal_inverse_sqrt(kappa: Complex64) -> Complex64 {
    kappa.sqrt().inv()
}

/// `κ^{-1/2} L(s) e^{i Im log G(s)}` at `s = 1/2 + it`.
///
/// This is `κ^{-1/2} (s(1-s))^{r} ξ(s)` divided by the positive quantity
/// `(1/4 + t²)^{r} |G(s)|`, so it is real for real `t` and has the sign of
/// the rotated completed function.
pub fn rotated_value(spec: &LFunctionSpec, t: f64) -> Result<Complex64> {
    let s = Complex64::new(0.5, t);
    let g = log_gamma_factor(spec, s)?;
    let l = evaluate(spec, s)?;
    Ok(principal_inverse_sqrt(spec.root_number()) * l * Complex64::from_polar(1.0, g.im))
}

/// Hardy's function for `spec`: real, with sign changes at the ordinates
/// of critical-line zeros.
pub fn hardy_z(spec: &LFunctionSpec, t: f64) -> Result<f64> {
    let v = rotated_value(spec, t)?;
    debug_assert!(
        v.im.abs() <= 1e-6 * v.norm() + 1e-10,
        "rotated value not real at t = {t}: {v}"
    );
    Ok(v.re)
}

/// Phase of `Λ(s) = (s(1-s))^{r} ξ(s)` modulo `2π`.
///
/// Points left of the critical line use `Λ(s) = κ·conj(Λ(1 - conj s))`, so
/// evaluation always happens at `Re(s) ≥ 1/2`, away from gamma poles.
fn entire_phase(spec: &LFunctionSpec, s: Complex64) -> Result<f64> {
    if s.re < 0.5 {
        let mirrored = Complex64::new(1.0 - s.re, s.im);
        return Ok(spec.root_number().arg() - entire_phase(spec, mirrored)?);
    }
    let r = spec.pole_order() as i32;
    let l_reg = evaluate_regularized(spec, s)?;
    let g = log_gamma_factor(spec, s)?;
    // (s(1-s))^r L = (-s)^r (s-1)^r L
    let minus_s = -s;
    Ok(l_reg.arg() + g.im + r as f64 * minus_s.arg())
}

fn wrap(x: f64) -> f64 {
    x - TAU * (x / TAU).round()
}

/// Real part of the left contour edge, moved further left when a gamma
/// pole `-μ_j - 2k` sits within 0.1 of it.
pub fn contour_sigma_bounds(spec: &LFunctionSpec) -> (f64, f64) {
    let mut lo: f64 = -0.5;
    loop {
        let close = spec.mu().iter().any(|mu| {
            (0..4).any(|k| {
                let pole = -mu - 2.0 * k as f64;
                pole.im.abs() < 0.1 && (pole.re - lo).abs() < 0.1
            })
        });
        if !close {
            break;
        }
        lo -= 0.25;
    }
    (lo, 1.0 - lo)
}

/// Accumulated phase change along the segment `a → b`, halving subsegments
/// until every step changes the phase by less than `π/4`.
fn segment_phase(spec: &LFunctionSpec, a: Complex64, b: Complex64, step: f64) -> Result<f64> {
    let len = (b - a).norm();
    let pieces = (len / step).ceil().max(1.0) as usize;
    let mut total = 0.0;
    let mut prev_s = a;
    let mut prev_phase = entire_phase(spec, a)?;
    for i in 1..=pieces {
        let s = a + (b - a) * (i as f64 / pieces as f64);
        let phase = entire_phase(spec, s)?;
        total += refine(spec, prev_s, prev_phase, s, phase, 0)?;
        prev_s = s;
        prev_phase = phase;
    }
    Ok(total)
}

fn refine(
    spec: &LFunctionSpec,
    a: Complex64,
    pa: f64,
    b: Complex64,
    pb: f64,
    depth: u32,
) -> Result<f64> {
    let d = wrap(pb - pa);
    if d.abs() < PI / 4.0 {
        return Ok(d);
    }
    if depth > 40 {
        let m = (a + b) * 0.5;
        return Err(Error::ContourTooClose { t: m.im, distance: (b - a).norm() });
    }
    let m = (a + b) * 0.5;
    let pm = entire_phase(spec, m)?;
    Ok(refine(spec, a, pa, m, pm, depth + 1)? + refine(spec, m, pm, b, pb, depth + 1)?)
}

fn check_edge_clearance(spec: &LFunctionSpec, t: f64) -> Result<()> {
    let lo = hardy_z(spec, t - EDGE_CLEARANCE)?;
    let hi = hardy_z(spec, t + EDGE_CLEARANCE)?;
    if lo == 0.0 || hi == 0.0 || (lo < 0.0) != (hi < 0.0) {
        return Err(Error::ContourTooClose { t, distance: EDGE_CLEARANCE });
    }
    Ok(())
}

/// Winding number of `Λ` around `[σ_lo, σ_hi] × [t_lo, t_hi]` before the
/// division by `2π`, in units of full turns.
pub fn winding_turns(spec: &LFunctionSpec, t_lo: f64, t_hi: f64) -> Result<f64> {
    if !(t_lo < t_hi) || !t_lo.is_finite() || !t_hi.is_finite() {
        return Err(Error::domain(format!("empty window [{t_lo}, {t_hi}]")));
    }
    check_edge_clearance(spec, t_lo)?;
    check_edge_clearance(spec, t_hi)?;
    let (sl, sh) = contour_sigma_bounds(spec);
    let corners = [
        Complex64::new(sl, t_lo),
        Complex64::new(sh, t_lo),
        Complex64::new(sh, t_hi),
        Complex64::new(sl, t_hi),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        total += segment_phase(spec, corners[i], corners[(i + 1) % 4], 0.1)?;
    }
    Ok(total / TAU)
}

/// Number of non-trivial zeros with `t_lo < γ ≤ t_hi`, by the argument
/// principle.
pub fn count_zeros(spec: &LFunctionSpec, t_lo: f64, t_hi: f64) -> Result<usize> {
    let turns = winding_turns(spec, t_lo, t_hi)?;
    let n = turns.round();
    if (turns - n).abs() > 0.01 || n < 0.0 {
        return Err(Error::NonIntegerWinding(turns));
    }
    Ok(n as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroOrdinate {
    pub gamma: f64,
    /// `|Z(γ)|` at the refined ordinate.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroScan {
    pub label: String,
    pub t_lo: f64,
    pub t_hi: f64,
    pub step: f64,
    pub zeros: Vec<ZeroOrdinate>,
    pub contour_count: usize,
    pub complete: bool,
}

impl ZeroScan {
    pub fn ordinates(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.gamma).collect()
    }

    /// CSV with columns `n, gamma, residual`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "gamma", "residual"])?;
        for (n, z) in self.zeros.iter().enumerate() {
            w.write_record([(n + 1).to_string(), z.gamma.to_string(), z.residual.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Root of `Z` in `[a, b]` given opposite signs at the ends.
fn bisect(spec: &LFunctionSpec, mut a: f64, mut za: f64, mut b: f64) -> Result<f64> {
    while b - a > REFINE_TOL {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let zm = hardy_z(spec, m)?;
        if zm == 0.0 {
            return Ok(m);
        }
        if (zm < 0.0) == (za < 0.0) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn sign_change_scan(spec: &LFunctionSpec, t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<ZeroOrdinate>> {
    let n = ((t_hi - t_lo) / step).ceil().max(1.0) as usize;
    let mut zeros = Vec::new();
    let mut prev_t = t_lo;
    let mut prev_z = hardy_z(spec, t_lo)?;
    for i in 1..=n {
        let t = if i == n { t_hi } else { t_lo + (t_hi - t_lo) * i as f64 / n as f64 };
        let z = hardy_z(spec, t)?;
        if prev_z != 0.0 && (z == 0.0 || (z < 0.0) != (prev_z < 0.0)) {
            let gamma = if z == 0.0 { t } else { bisect(spec, prev_t, prev_z, t)? };
            zeros.push(ZeroOrdinate { gamma, residual: hardy_z(spec, gamma)?.abs() });
        }
        prev_t = t;
        prev_z = z;
    }
    Ok(zeros)
}

/// Count zeros in the window, nudging each edge outward while a zero
/// sits too close to it.
fn count_with_jitter(spec: &LFunctionSpec, t_lo: f64, t_hi: f64) -> Result<(f64, f64, usize)> {
    let (mut lo, mut hi) = (t_lo, t_hi);
    for _ in 0..8 {
        match count_zeros(spec, lo, hi) {
            Ok(n) => return Ok((lo, hi, n)),
            Err(Error::ContourTooClose { t, .. }) => {
                if (t - lo).abs() <= (t - hi).abs() {
                    lo -= EDGE_JITTER;
                } else {
                    hi += EDGE_JITTER;
                }
            }
            Err(e) => return Err(e),
        }
    }
    count_zeros(spec, lo, hi).map(|n| (lo, hi, n))
}

/// Locate critical-line zeros in `[t_lo, t_hi]` by sign changes of `Z`
/// and compare against the contour count; one retry at a quarter of the
/// step if they disagree.
pub fn find_zeros(spec: &LFunctionSpec, t_lo: f64, t_hi: f64, step: f64) -> Result<ZeroScan> {
    if !(step > 0.0) {
        return Err(Error::domain(format!("scan step must be positive, got {step}")));
    }
    let (lo, hi, count) = count_with_jitter(spec, t_lo, t_hi)?;
    let mut used_step = step;
    let mut zeros = sign_change_scan(spec, lo, hi, used_step)?;
    if zeros.len() != count {
        used_step = step / 4.0;
        zeros = sign_change_scan(spec, lo, hi, used_step)?;
    }
    if zeros.len() != count {
        log::warn!(
            "{}: {} sign changes vs contour count {count} on [{lo}, {hi}]",
            spec.label(),
            zeros.len()
        );
    }
    Ok(ZeroScan {
        label: spec.label(),
        t_lo: lo,
        t_hi: hi,
        step: used_step,
        complete: zeros.len() == count,
        contour_count: count,
        zeros,
    })
}

/// Average spacing of zeros near height `t`, `2π / log(C/(2π)^m)`, floored
/// so that tiny conductors still give a finite margin.
pub fn mean_gap(spec: &LFunctionSpec, t: f64) -> f64 {
    let density = (analytic_conductor(spec, t) / TAU.powi(spec.degree() as i32)).ln();
    TAU / density.max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub family: String,
    pub param: String,
    #[serde(rename = "T")]
    pub t: f64,
    pub nearest_zero: f64,
    pub nearest_distance: f64,
    pub consecutive_gap: Option<f64>,
    pub conductor: f64,
    /// `C_L(T) / π^m`, the alternative normalization.
    pub conductor_pi_normalized: f64,
    pub complete: bool,
    pub thm1_bound: Option<f64>,
    pub thm2_bound: Option<f64>,
    pub thm1_applicable: bool,
    pub thm2_applicable: bool,
    /// Which applicable bound is smaller, if any.
    pub tighter_bound: Option<String>,
    pub consistent: bool,
}

/// Nearest zero to `T`, the gap between the zeros straddling `T`, and the
/// analytic conductor there. Bound fields are left empty.
pub fn gap_at(spec: &LFunctionSpec, scan: &ZeroScan, t: f64) -> Result<GapReport> {
    let needed = mean_gap(spec, t);
    if t - scan.t_lo < needed || scan.t_hi - t < needed {
        return Err(Error::WindowMargin { t, lo: scan.t_lo, hi: scan.t_hi, needed });
    }
    let nearest = scan
        .zeros
        .iter()
        .min_by(|a, b| (a.gamma - t).abs().total_cmp(&(b.gamma - t).abs()))
        .ok_or(Error::TooFewZeros(0))?;
    let prev = scan.zeros.iter().rev().find(|z| z.gamma <= t);
    let next = scan.zeros.iter().find(|z| z.gamma > t);
    Ok(GapReport {
        family: spec.family().name().to_string(),
        param: spec.label(),
        t,
        nearest_zero: nearest.gamma,
        nearest_distance: (nearest.gamma - t).abs(),
        consecutive_gap: prev.zip(next).map(|(p, n)| n.gamma - p.gamma),
        conductor: analytic_conductor(spec, t),
        conductor_pi_normalized: analytic_conductor_pi_normalized(spec, t),
        complete: scan.complete,
        thm1_bound: None,
        thm2_bound: None,
        thm1_applicable: false,
        thm2_applicable: false,
        tighter_bound: None,
        consistent: true,
    })
}

/// Largest gap between consecutive located ordinates.
pub fn max_consecutive_gap(scan: &ZeroScan) -> Result<f64> {
    if !scan.complete {
        return Err(Error::IncompleteScan { found: scan.zeros.len(), expected: scan.contour_count });
    }
    if scan.zeros.len() < 2 {
        return Err(Error::TooFewZeros(scan.zeros.len()));
    }
    Ok(scan
        .zeros
        .windows(2)
        .map(|w| w[1].gamma - w[0].gamma)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Main term of the zero-counting function: `(T/2π) log(T/2πe)` for zeta
/// (zeros with `0 < γ ≤ T`) and `(T/π) log(qT/2πe)` for Dirichlet L
/// (zeros with `|γ| ≤ T`).
pub fn rvm_main_term(spec: &LFunctionSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("T must be positive, got {t}")));
    }
    match spec.family() {
        Family::Zeta => Ok(t / TAU * (t / (TAU * E)).ln()),
        Family::Dirichlet(chi) => Ok(t / PI * (chi.modulus() as f64 * t / (TAU * E)).ln()),
        Family::DedekindQuadratic { .. } => Err(Error::UnsupportedFamily(
            "dedekind: sum the main terms of its two factors".into(),
        )),
    }
}
