//! Euler–Maclaurin continuation of Dirichlet series with periodic
//! coefficients. The Riemann zeta function is the period-1 case; Dirichlet
//! L-functions are period-q series with character values as coefficients.

use num_complex::Complex64;

use super::sum::CompensatedSum;
use super::{EvalOptions, BERNOULLI_OVER_FACTORIAL};
use crate::error::{Error, Result};

const MAX_TRUNCATION: usize = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PeriodicMode {
    /// Return `Σ c(n) n^{-s}` itself.
    Plain,
    /// Return `(s-1) Σ c(n) n^{-s}`, analytic at s = 1.
    TimesSMinusOne,
}

#[inline]
fn real_pow_neg(x: f64, s: Complex64) -> Complex64 {
    let l = x.ln();
    let mag = (-s.re * l).exp();
    let (sin, cos) = (s.im * l).sin_cos();
    Complex64::new(mag * cos, -mag * sin)
}

/// `(e^u - 1) / u`, accurate near u = 0.
fn exprel(u: Complex64) -> Complex64 {
    if u.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..40 {
            term *= u / k as f64;
            acc += term;
            if term.norm() < 1e-18 * acc.norm() {
                break;
            }
        }
        acc
    } else {
        (u.exp() - 1.0) / u
    }
}

/// Magnitude of the rising factorial `(s)_n`.
fn pochhammer_norm(s: Complex64, n: usize) -> f64 {
    (0..n).map(|j| (s + j as f64).norm()).product()
}

/// Smallest truncation point whose last Bernoulli correction is below the
/// target. `weight` scales the estimate (the period for L-series).
fn truncation_point(s: Complex64, opts: &EvalOptions, weight: f64) -> usize {
    let p = opts.euler_maclaurin_order;
    let coef = BERNOULLI_OVER_FACTORIAL[p - 1].abs() * pochhammer_norm(s, 2 * p - 1) * weight;
    let expo = s.re + 2.0 * p as f64 - 1.0;
    let mut n = opts.series_cutoff.max(1);
    while n < MAX_TRUNCATION {
        let est = coef * (n as f64).powf(-expo);
        if est < 0.1 * opts.target_abs_tol {
            break;
        }
        n = n + n / 4 + 1;
    }
    n
}

/// Bernoulli corrections `Σ_k B_{2k}/(2k)! (s)_{2k-1} y^{-s} (q/y)^{2k-1}`
/// together with `y^{-s}/2`.
fn em_corrections(s: Complex64, y: f64, q: f64, order: usize, y_pow: Complex64) -> Complex64 {
    let ratio = q / y;
    let ratio2 = ratio * ratio;
    let mut poch = s;
    let mut r = ratio;
    let mut acc = y_pow * 0.5;
    for k in 1..=order {
        acc += y_pow * poch * (BERNOULLI_OVER_FACTORIAL[k - 1] * r);
        let j = 2.0 * k as f64;
        poch *= (s + (j - 1.0)) * (s + j);
        r *= ratio2;
    }
    acc
}

/// Continuation of `Σ_{n≥1} c(n) n^{-s}` where `c` has period `coeffs.len()`
/// and `coeffs[a-1] = c(a)`.
pub(crate) fn periodic_series(
    s: Complex64,
    coeffs: &[Complex64],
    opts: &EvalOptions,
    mode: PeriodicMode,
) -> Result<Complex64> {
    opts.validate()?;
    let q = coeffs.len();
    if q == 0 {
        return Err(Error::domain("empty coefficient table"));
    }
    let total: Complex64 = coeffs.iter().sum();
    let zero_sum = total.norm() < 1e-12;
    let at_pole = s.re == 1.0 && s.im == 0.0;
    if at_pole && !zero_sum && mode == PeriodicMode::Plain {
        return Err(Error::pole(s));
    }
    let qf = q as f64;
    let n_trunc = truncation_point(s, opts, qf.powf((1.0 - s.re).max(0.0)));
    let last = q * n_trunc;

    let mut direct = CompensatedSum::new();
    for m in 1..=last {
        let c = coeffs[(m - 1) % q];
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        direct.add(c * real_pow_neg(m as f64, s));
    }

    let mut corrections = CompensatedSum::new();
    let mut pole_part = CompensatedSum::new();
    for (idx, &c) in coeffs.iter().enumerate() {
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let y = (last + idx + 1) as f64;
        let y_pow = real_pow_neg(y, s);
        corrections.add(c * em_corrections(s, y, qf, opts.euler_maclaurin_order, y_pow));
        if zero_sum {
            // (y^{1-s} - 1) / (s - 1), the constant cancels against Σ c = 0.
            let l = y.ln();
            pole_part.add(c * (-l * exprel((1.0 - s) * l)) / qf);
        } else {
            // y^{1-s} / q, divided by (s - 1) below
            pole_part.add(c * y_pow * (y / qf));
        }
    }
    let regular = direct.value() + corrections.value();
    let pole = pole_part.value();
    Ok(match (mode, zero_sum) {
        (PeriodicMode::Plain, true) => regular + pole,
        (PeriodicMode::Plain, false) => regular + pole / (s - 1.0),
        (PeriodicMode::TimesSMinusOne, true) => (s - 1.0) * (regular + pole),
        (PeriodicMode::TimesSMinusOne, false) => (s - 1.0) * regular + pole,
    })
}

fn check_strip(s: Complex64) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    if s.re <= -2.0 {
        return Err(Error::domain(format!("Re(s) = {} must exceed -2", s.re)));
    }
    if s.im.abs() > 1e4 {
        return Err(Error::domain(format!("|Im(s)| = {} exceeds 1e4", s.im.abs())));
    }
    Ok(())
}

const ONE: [Complex64; 1] = [Complex64 { re: 1.0, im: 0.0 }];

/// Riemann zeta function by Euler–Maclaurin summation.
pub fn riemann_zeta(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    check_strip(s)?;
    periodic_series(s, &ONE, opts, PeriodicMode::Plain)
}

/// `(s - 1) ζ(s)`, entire; equals 1 at s = 1.
pub fn zeta_times_s_minus_one(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    check_strip(s)?;
    periodic_series(s, &ONE, opts, PeriodicMode::TimesSMinusOne)
}

/// `ζ(s)` and `ζ'(s)` from the differentiated Euler–Maclaurin formula.
pub fn riemann_zeta_with_derivative(
    s: Complex64,
    opts: &EvalOptions,
) -> Result<(Complex64, Complex64)> {
    check_strip(s)?;
    opts.validate()?;
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::pole(s));
    }
    // The derivative carries an extra log factor; tighten accordingly.
    let n = truncation_point(s, opts, 1.0) * 2;
    let mut value = CompensatedSum::new();
    let mut deriv = CompensatedSum::new();
    for m in 1..=n {
        let l = (m as f64).ln();
        let t = real_pow_neg(m as f64, s);
        value.add(t);
        deriv.add(-l * t);
    }
    let y = (n + 1) as f64;
    let ly = y.ln();
    let yp = real_pow_neg(y, s);
    let sm1 = s - 1.0;
    let mut v = yp * y / sm1 + yp * 0.5;
    let mut d = -ly * yp * y / sm1 - yp * y / (sm1 * sm1) - ly * yp * 0.5;
    let mut poch = s;
    let mut dpoch = Complex64::new(1.0, 0.0);
    let mut ypow = yp / y;
    for k in 1..=opts.euler_maclaurin_order {
        let b = BERNOULLI_OVER_FACTORIAL[k - 1];
        v += b * poch * ypow;
        d += b * (dpoch - ly * poch) * ypow;
        let j = 2.0 * k as f64;
        for shift in [j - 1.0, j] {
            dpoch = dpoch * (s + shift) + poch;
            poch *= s + shift;
        }
        ypow /= y * y;
    }
    value.add(v);
    deriv.add(d);
    Ok((value.value(), deriv.value()))
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` for `0 < a ≤ 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64, opts: &EvalOptions) -> Result<Complex64> {
    check_strip(s)?;
    opts.validate()?;
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!("Hurwitz parameter a = {a} outside (0, 1]")));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::pole(s));
    }
    let n = truncation_point(s, opts, a.powf(-s.re.max(0.0)).max(1.0));
    let mut acc = CompensatedSum::new();
    for k in 0..n {
        acc.add(real_pow_neg(k as f64 + a, s));
    }
    let y = n as f64 + a;
    let yp = real_pow_neg(y, s);
    acc.add(yp * y / (s - 1.0));
    acc.add(em_corrections(s, y, 1.0, opts.euler_maclaurin_order, yp));
    Ok(acc.value())
}
