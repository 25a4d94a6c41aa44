use std::f64::consts::PI;

use num_complex::Complex64;

use super::sum::CompensatedSum;
use super::BERNOULLI_EVEN;
use crate::error::{Error, Result};

/// Stirling is used once |z| reaches this radius with Re(z) >= 0.
const STIRLING_RADIUS: f64 = 15.0;

fn check_pole(s: Complex64) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::pole(s));
    }
    if s.re < -1e5 {
        return Err(Error::domain("real part below -1e5"));
    }
    Ok(())
}

/// Principal branch of `log Γ(s)`, continuous on the plane cut along the
/// non-positive real axis.
///
/// The argument is shifted up by the recurrence `Γ(s+1) = sΓ(s)` until the
/// Stirling series is accurate. Summing principal logarithms of the shift
/// factors (rather than taking the log of their product) keeps the branch.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    let mut z = s;
    let mut shift = CompensatedSum::new();
    while z.re < 0.0 || z.norm() < STIRLING_RADIUS {
        shift.add(z.ln());
        z += 1.0;
    }
    Ok(stirling(z) - shift.value())
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pow * (b / (n * (n - 1.0)));
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// Digamma `ψ(s) = Γ'(s)/Γ(s)`.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    check_pole(s)?;
    let mut z = s;
    let mut shift = CompensatedSum::new();
    while z.re < 0.0 || z.norm() < STIRLING_RADIUS {
        shift.add(z.inv());
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pow * (b / n);
        pow *= inv2;
    }
    Ok(z.ln() - 0.5 * inv - series - shift.value())
}
