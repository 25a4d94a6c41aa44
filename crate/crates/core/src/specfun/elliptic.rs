//! Complete elliptic integrals by the arithmetic-geometric mean and Jacobi
//! elliptic functions through Jacobi theta series.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    0.5 * (a + b)
}

fn complementary(k: f64) -> f64 {
    ((1.0 - k) * (1.0 + k)).sqrt()
}

/// Complete elliptic integral of the first kind `K(k)`, modulus convention.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::domain(format!("modulus k = {k} outside [0, 1)")));
    }
    Ok(PI / (2.0 * agm(1.0, complementary(k))))
}

/// `K'(k) = K(√(1-k²))`, computed from `k` directly so that tiny moduli keep
/// full precision.
pub fn elliptic_k_complement(k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain(format!("modulus k = {k} outside (0, 1)")));
    }
    Ok(PI / (2.0 * agm(1.0, k)))
}

/// Jacobi nome `q = exp(-π K'/K)`.
pub fn nome(k: f64) -> Result<f64> {
    if k == 0.0 {
        return Ok(0.0);
    }
    Ok((-PI * elliptic_k_complement(k)? / elliptic_k(k)?).exp())
}

/// Solve `K'(k)/K(k) = ratio` by bisection. Returns `(k, k')`.
///
/// The period ratio is strictly decreasing in `k`. For ratios at least one
/// the bisection runs on `ln k`, which resolves the very small moduli that
/// elongated rectangles need; smaller ratios use the symmetry `k ↔ k'`.
pub fn solve_modulus_for_ratio(ratio: f64) -> Result<(f64, f64)> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::domain(format!("period ratio {ratio} must be positive")));
    }
    if ratio < 1.0 {
        let (kp, k) = solve_modulus_for_ratio(1.0 / ratio)?;
        return Ok((k, kp));
    }
    if ratio > 400.0 {
        return Err(Error::domain(format!("period ratio {ratio} too extreme")));
    }
    let period_ratio = |ln_k: f64| -> f64 {
        let k = ln_k.exp();
        PI / (2.0 * agm(1.0, k)) / (PI / (2.0 * agm(1.0, complementary(k))))
    };
    let mut lo = 4f64.ln() - 0.5 * PI * ratio - 5.0;
    let mut hi = FRAC_1_SQRT_2.ln();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if period_ratio(mid) > ratio {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = (0.5 * (lo + hi)).exp();
    Ok((k, complementary(k)))
}

/// `e^{log_scale} · (sin w, cos w)` without intermediate overflow.
fn scaled_sin_cos(w: Complex64, log_scale: f64) -> (Complex64, Complex64) {
    // e^{iw} = e^{-y} e^{ix},  e^{-iw} = e^{y} e^{-ix}
    let (sx, cx) = w.re.sin_cos();
    let a = (log_scale - w.im).exp();
    let b = (log_scale + w.im).exp();
    let pos = Complex64::new(a * cx, a * sx);
    let neg = Complex64::new(b * cx, -b * sx);
    let sin = (pos - neg) / Complex64::new(0.0, 2.0);
    let cos = (pos + neg) * 0.5;
    (sin, cos)
}

/// Theta-series evaluation of `sn, cn, dn` for a modulus `k ≤ 1/√2`.
///
/// The `q^{1/4}` prefactor of `θ1` and `θ2` cancels in every ratio, so it
/// is dropped; `ln q` is kept instead of `q` so that elongated period
/// rectangles (q far below the double range) stay usable.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ThetaSn {
    pub quarter: f64,
    pub quarter_complement: f64,
    ln_q: f64,
    theta2_0: f64,
    theta3_0: f64,
    theta4_0: f64,
}

impl ThetaSn {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=FRAC_1_SQRT_2 + 1e-15).contains(&k) {
            return Err(Error::domain(format!("theta evaluation needs k <= 1/sqrt 2, got {k}")));
        }
        let quarter = elliptic_k(k)?;
        let (quarter_complement, ln_q) = if k == 0.0 {
            (f64::INFINITY, f64::NEG_INFINITY)
        } else {
            let kp = elliptic_k_complement(k)?;
            (kp, -PI * kp / quarter)
        };
        Ok(Self::with_periods(quarter, quarter_complement, ln_q))
    }

    /// Build from known periods; `ln q = -π K'/K`.
    pub fn with_periods(quarter: f64, quarter_complement: f64, ln_q: f64) -> Self {
        let mut t = ThetaSn {
            quarter,
            quarter_complement,
            ln_q,
            theta2_0: 1.0,
            theta3_0: 1.0,
            theta4_0: 1.0,
        };
        let zero = Complex64::new(0.0, 0.0);
        t.theta2_0 = t.theta12(zero).1.re;
        let (t3, t4) = t.theta34(zero);
        t.theta3_0 = t3.re;
        t.theta4_0 = t4.re;
        t
    }

    /// Reduced θ1 and θ2 (without the `q^{1/4}` factor).
    fn theta12(&self, v: Complex64) -> (Complex64, Complex64) {
        let mut t1 = Complex64::new(0.0, 0.0);
        let mut t2 = Complex64::new(0.0, 0.0);
        for n in 0..40 {
            let nf = n as f64;
            let log_w = if n == 0 { 0.0 } else { nf * (nf + 1.0) * self.ln_q };
            if log_w == f64::NEG_INFINITY {
                break;
            }
            let (s, c) = scaled_sin_cos(v * (2.0 * nf + 1.0), log_w);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            t1 += s * sign;
            t2 += c;
            let bound = (log_w + (2.0 * nf + 1.0) * v.im.abs()).exp();
            if n > 0 && bound < 1e-18 * (t1.norm() + t2.norm()) {
                break;
            }
        }
        (t1 * 2.0, t2 * 2.0)
    }

    fn theta34(&self, v: Complex64) -> (Complex64, Complex64) {
        let mut t3 = Complex64::new(1.0, 0.0);
        let mut t4 = Complex64::new(1.0, 0.0);
        for n in 1..40 {
            let nf = n as f64;
            let log_w = nf * nf * self.ln_q;
            if log_w == f64::NEG_INFINITY {
                break;
            }
            let (_, c) = scaled_sin_cos(v * (2.0 * nf), log_w);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            t3 += c * 2.0;
            t4 += c * (2.0 * sign);
            let bound = (log_w + 2.0 * nf * v.im.abs()).exp();
            if bound < 1e-18 * (t3.norm() + t4.norm()) {
                break;
            }
        }
        (t3, t4)
    }

    /// `(sn, cn, dn)` at `u`, reduced by the common periods 4K and 4iK'.
    pub fn sncndn(&self, u: Complex64) -> (Complex64, Complex64, Complex64) {
        let mut u = u;
        let p_re = 4.0 * self.quarter;
        u.re -= p_re * (u.re / p_re).round();
        if self.quarter_complement.is_finite() {
            let p_im = 4.0 * self.quarter_complement;
            u.im -= p_im * (u.im / p_im).round();
        }
        let v = u * (PI / (2.0 * self.quarter));
        let (t1, t2) = self.theta12(v);
        let (t3, t4) = self.theta34(v);
        let sn = t1 * self.theta3_0 / (t4 * self.theta2_0);
        let cn = t2 * self.theta4_0 / (t4 * self.theta2_0);
        let dn = t3 * self.theta4_0 / (t4 * self.theta3_0);
        (sn, cn, dn)
    }
}

fn check_sn_domain(z: Complex64, k: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::domain(format!("modulus k = {k} outside [0, 1)")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    let quarter = elliptic_k(k)?;
    let quarter_c = if k == 0.0 { f64::INFINITY } else { elliptic_k_complement(k)? };
    if z.re.abs() > 8.0 * quarter || z.im.abs() > 4.0 * quarter_c {
        return Err(Error::domain(format!(
            "z = {z} lies outside two fundamental period rectangles"
        )));
    }
    Ok((quarter, quarter_c))
}

/// Jacobi `sn, cn, dn` at complex argument.
///
/// Moduli above `1/√2` go through Jacobi's imaginary transformation so the
/// theta series always run with a nome of at most `e^{-π}`.
pub fn jacobi_sncndn(z: Complex64, k: f64) -> Result<(Complex64, Complex64, Complex64)> {
    check_sn_domain(z, k)?;
    let (sn, cn, dn) = if k <= FRAC_1_SQRT_2 {
        ThetaSn::new(k)?.sncndn(z)
    } else {
        let kp = complementary(k);
        let iz = Complex64::new(-z.im, z.re);
        let (s1, c1, d1) = ThetaSn::new(kp)?.sncndn(iz);
        (Complex64::new(0.0, -1.0) * s1 / c1, c1.inv(), d1 / c1)
    };
    if !(sn.re.is_finite() && sn.im.is_finite()) {
        return Err(Error::pole(z));
    }
    Ok((sn, cn, dn))
}

/// Jacobi elliptic function `sn(z, k)`.
pub fn jacobi_sn(z: Complex64, k: f64) -> Result<Complex64> {
    jacobi_sncndn(z, k).map(|(sn, _, _)| sn)
}

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication, for complex
/// arguments off the negative real axis.
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let mut a = (x + y + z) / 3.0;
    for _ in 0..200 {
        let dev = (a - x).norm().max((a - y).norm()).max((a - z).norm());
        if dev < 1e-4 * a.norm() {
            break;
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        a = (a + lambda) * 0.25;
    }
    let dx = (a - x) / a;
    let dy = (a - y) / a;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0)
        + e2 * e2 * e2 * (-5.0 / 208.0)
        + e3 * e3 * (3.0 / 104.0)
        + e2 * e2 * e3 / 16.0)
        / a.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Modulus from the nome through theta constants, independent of the
    /// bisection: `k = θ2(0)^2 / θ3(0)^2` with `q = e^{-π ratio}`.
    fn modulus_from_nome(ratio: f64) -> f64 {
        let q: f64 = (-PI * ratio).exp();
        let t2: f64 = (0..20).map(|n| 2.0 * q.powf((n as f64 + 0.5).powi(2))).sum();
        let t3: f64 = 1.0 + (1..20).map(|n| 2.0 * q.powi(n * n)).sum::<f64>();
        (t2 / t3).powi(2)
    }

    #[test]
    fn complete_integral_values() {
        assert!((elliptic_k(0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        // K(1/√2) = Γ(1/4)^2 / (4√π)
        let expected = 3.625_609_908_221_908f64.powi(2) / (4.0 * PI.sqrt());
        assert!((elliptic_k(FRAC_1_SQRT_2).unwrap() - expected).abs() < 1e-14 * expected);
        assert!(elliptic_k(0.99).unwrap() > elliptic_k(0.9).unwrap());
        assert!(elliptic_k(0.99).unwrap().is_finite());
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
    }

    #[test]
    fn square_modulus_by_bisection() {
        let (k, kp) = solve_modulus_for_ratio(1.0).unwrap();
        assert!((k - FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((kp - FRAC_1_SQRT_2).abs() < 1e-10);
        let ratio = elliptic_k_complement(k).unwrap() / elliptic_k(k).unwrap();
        assert!((ratio - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bisection_matches_theta_constants() {
        for ratio in [0.3, 0.8, 1.0, 1.7, 3.0, 8.0, 20.0, 50.0] {
            let (k, kp) = solve_modulus_for_ratio(ratio).unwrap();
            if ratio >= 1.0 {
                let oracle = modulus_from_nome(ratio);
                assert!((k - oracle).abs() <= 1e-11 * oracle, "ratio {ratio}: {k} vs {oracle}");
            } else {
                let oracle = modulus_from_nome(1.0 / ratio);
                assert!((kp - oracle).abs() <= 1e-11 * oracle);
            }
        }
    }

    #[test]
    fn sn_special_values() {
        assert!(jacobi_sn(c(0.0, 0.0), 0.5).unwrap().norm() < 1e-16);
        let kk = elliptic_k(0.5).unwrap();
        assert!((jacobi_sn(c(kk, 0.0), 0.5).unwrap() - 1.0).norm() < 1e-13);
        assert!((jacobi_sn(c(0.3, 0.0), 0.0).unwrap().re - 0.3f64.sin()).abs() < 1e-15);
        // sn(K + iK'/2) = 1/√k
        for k in [0.2, 0.5, 0.9] {
            let kp = elliptic_k_complement(k).unwrap();
            let kk = elliptic_k(k).unwrap();
            let v = jacobi_sn(c(kk, 0.5 * kp), k).unwrap();
            assert!((v - 1.0 / k.sqrt()).norm() < 1e-11, "k={k} v={v}");
        }
    }

    #[test]
    fn sn_degenerate_modulus_is_sine_on_complex_plane() {
        for z in [c(0.3, 0.2), c(-1.0, 2.0), c(2.5, -0.7)] {
            let v = jacobi_sn(z, 0.0).unwrap();
            assert!((v - z.sin()).norm() < 1e-13 * (1.0 + z.sin().norm()));
        }
    }

    #[test]
    fn sn_satisfies_differential_identities() {
        // d sn/du = cn dn, checked by central differences.
        for &k in &[0.1, 0.5, 0.7, 0.85, 0.99] {
            for z in [c(0.3, 0.4), c(1.1, -0.2), c(-0.5, 0.9)] {
                let (_, cn, dn) = jacobi_sncndn(z, k).unwrap();
                let h = 1e-6;
                let fd = (jacobi_sn(z + h, k).unwrap() - jacobi_sn(z - h, k).unwrap()) / (2.0 * h);
                assert!((fd - cn * dn).norm() < 1e-7, "k={k} z={z}");
            }
        }
    }

    #[test]
    fn sn_domain_errors() {
        assert!(jacobi_sn(c(0.1, 0.0), 1.0).is_err());
        assert!(jacobi_sn(c(100.0, 0.0), 0.5).is_err());
    }

    #[test]
    fn carlson_rf_inverts_sn() {
        for &k in &[0.3f64, 0.7] {
            for z in [c(0.4, 0.3), c(1.0, 0.5), c(0.2, 1.2)] {
                let x = jacobi_sn(z, k).unwrap();
                let back = x * carlson_rf(1.0 - x * x, 1.0 - k * k * x * x, c(1.0, 0.0));
                assert!((back - z).norm() < 1e-12, "k={k} z={z} back={back}");
            }
        }
        // R_F(0, 1, 2) ≈ 1.3110287771461
        let v = carlson_rf(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0));
        assert!((v.re - 1.311_028_777_146_059_9).abs() < 1e-13);
    }
}
