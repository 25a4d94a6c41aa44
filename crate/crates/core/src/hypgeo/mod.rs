//! Hyperbolic distance in the unit disk, horizontal strips and rectangles.
//!
//! Rectangles are mapped to the upper half-plane by `ζ = sn(w, k)²` on the
//! quarter-period rectangle `[0, K] × [0, K']` (corners go to `0, 1, 1/k²,
//! ∞`), then to the disk by a Möbius transformation. Distances use the
//! half-plane and disk closed forms directly, which stay accurate for points
//! close to the boundary.

mod lemmas;

pub use lemmas::{
    borel_family, check_lemma_borel, check_lemma_rademacher, check_lemma_siegel,
    check_log1p_bound, check_tanh_corollary, check_tanh_inequality, lemma25_distance,
    lemma_borel_outcome, lemma_rademacher_outcome, lemma_siegel_outcome, rademacher_family,
    schwarz_pick_maps, siegel_family, siegel_sinh_ratio, BorelInstance, LemmaOutcome,
    RademacherInstance, SiegelInstance, TestFunction,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{carlson_rf, elliptic_k, solve_modulus_for_ratio, ThetaSn};

/// Longest side ratio accepted by [`build_rect_map`]; beyond it the image
/// of the far corner leaves the double range.
pub const MAX_ASPECT_RATIO: f64 = 200.0;

fn check_in_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::domain(format!("{z} is not inside the unit disk")));
    }
    Ok(())
}

/// `atanh |(z1 - z2) / (1 - conj(z1) z2)|`.
pub fn disk_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    check_in_disk(z1)?;
    check_in_disk(z2)?;
    let num = (z1 - z2).norm();
    let den = (Complex64::new(1.0, 0.0) - z1.conj() * z2).norm();
    // |1 - z̄1 z2|² - |z1 - z2|² = (1 - |z1|²)(1 - |z2|²)
    let n1 = z1.norm();
    let n2 = z2.norm();
    let prod = ((1.0 - n1) * (1.0 + n1) * (1.0 - n2) * (1.0 + n2)).sqrt();
    Ok(((den + num) / prod).ln())
}

/// Hyperbolic distance in the upper half-plane.
pub fn half_plane_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    if !(z1.im > 0.0 && z2.im > 0.0) {
        return Err(Error::domain("points must lie in the upper half-plane"));
    }
    let near = (z1 - z2).norm();
    let far = (z1 - z2.conj()).norm();
    Ok(((far + near) / (2.0 * (z1.im * z2.im).sqrt())).ln())
}

/// Distance in the strip `|t - center_t| < aπ/4`, pulled back to the disk
/// by `z = tanh((w - i·center_t)/a)`.
pub fn strip_distance(w1: Complex64, w2: Complex64, center_t: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("strip parameter a = {a} must be positive")));
    }
    let u = |w: Complex64| (w - Complex64::new(0.0, center_t)) / a;
    let (u1, u2) = (u(w1), u(w2));
    for uk in [u1, u2] {
        if !(uk.im.abs() < PI / 4.0) {
            return Err(Error::domain("point outside the strip"));
        }
    }
    // tanh u1 - tanh u2 = sinh(u1 - u2)/(cosh u1 cosh u2) and
    // 1 - conj(tanh u1) tanh u2 = cosh(u2 - conj u1)/(conj(cosh u1) cosh u2)
    let num = (u1 - u2).sinh().norm();
    let den = (u2 - u1.conj()).cosh().norm();
    let prod = ((2.0 * u1.im).cos() * (2.0 * u2.im).cos()).sqrt();
    Ok(((den + num) / prod).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleDomain {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl RectangleDomain {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let finite = [sigma_lo, sigma_hi, t_lo, t_hi].iter().all(|v| v.is_finite());
        if !finite || !(sigma_lo < sigma_hi) || !(t_lo < t_hi) {
            return Err(Error::domain(format!(
                "degenerate rectangle [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]"
            )));
        }
        Ok(RectangleDomain { sigma_lo, sigma_hi, t_lo, t_hi })
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    /// Strict interior membership.
    pub fn contains(&self, s: Complex64) -> bool {
        s.re > self.sigma_lo && s.re < self.sigma_hi && s.im > self.t_lo && s.im < self.t_hi
    }

    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_lo, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_hi),
            Complex64::new(self.sigma_lo, self.t_hi),
        ]
    }

    pub fn is_subset_of(&self, other: &RectangleDomain) -> bool {
        self.sigma_lo >= other.sigma_lo
            && self.sigma_hi <= other.sigma_hi
            && self.t_lo >= other.t_lo
            && self.t_hi <= other.t_hi
    }
}

/// Biholomorphic map of a rectangle onto the unit disk sending a chosen
/// center to the origin.
#[derive(Debug, Clone)]
pub struct ConformalRectMap {
    rect: RectangleDomain,
    modulus: f64,
    quarter: f64,
    quarter_complement: f64,
    anchor: Complex64,
    factor: Complex64,
    theta: ThetaSn,
    center: Complex64,
    center_image: Complex64,
}

/// Map `R` onto the disk with `center ↦ 0`.
pub fn build_rect_map(rect: &RectangleDomain, center: Complex64) -> Result<ConformalRectMap> {
    let rect = RectangleDomain::new(rect.sigma_lo, rect.sigma_hi, rect.t_lo, rect.t_hi)?;
    if !rect.contains(center) {
        return Err(Error::domain(format!("center {center} not inside the rectangle")));
    }
    let (w, h) = (rect.width(), rect.height());
    // Orient so that the long side is the K' direction: ratio K'/K >= 1.
    let ratio = if h >= w { h / w } else { w / h };
    if ratio > MAX_ASPECT_RATIO {
        return Err(Error::domain(format!("rectangle aspect ratio {ratio} too extreme")));
    }
    let (modulus, _) = solve_modulus_for_ratio(ratio)?;
    let quarter = elliptic_k(modulus)?;
    let quarter_complement = quarter * ratio;
    let (anchor, factor) = if h >= w {
        (Complex64::new(rect.sigma_lo, rect.t_lo), Complex64::new(quarter / w, 0.0))
    } else {
        (Complex64::new(rect.sigma_hi, rect.t_lo), Complex64::new(0.0, -quarter / h))
    };
    let theta = ThetaSn::with_periods(quarter, quarter_complement, -PI * ratio);
    let mut map = ConformalRectMap {
        rect,
        modulus,
        quarter,
        quarter_complement,
        anchor,
        factor,
        theta,
        center,
        center_image: Complex64::new(0.0, 1.0),
    };
    map.center_image = map
        .to_half_plane(center)
        .ok_or_else(|| Error::domain("center maps to infinity"))?;
    Ok(map)
}

impl ConformalRectMap {
    pub fn rect(&self) -> &RectangleDomain {
        &self.rect
    }
    pub fn modulus(&self) -> f64 {
        self.modulus
    }
    /// Quarter periods `(K, K')` of the normalized rectangle.
    pub fn quarter_periods(&self) -> (f64, f64) {
        (self.quarter, self.quarter_complement)
    }
    pub fn center(&self) -> Complex64 {
        self.center
    }

    /// Image in the closed upper half-plane; `None` at the corner sent to ∞.
    pub fn to_half_plane(&self, s: Complex64) -> Option<Complex64> {
        let w = self.factor * (s - self.anchor);
        let (sn, _, _) = self.theta.sncndn(w);
        let z = Complex64::new(sn.re * sn.re - sn.im * sn.im, 2.0 * sn.re * sn.im);
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }

    /// Point of the closed disk; the corner at ∞ of the half-plane maps to 1.
    pub fn forward(&self, s: Complex64) -> Complex64 {
        match self.to_half_plane(s) {
            Some(z) => (z - self.center_image) / (z - self.center_image.conj()),
            None => Complex64::new(1.0, 0.0),
        }
    }

    /// Preimage of a disk point, through `sn⁻¹` by Carlson's `R_F` and a
    /// Newton polish on `sn² = ζ`.
    pub fn inverse(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let one = Complex64::new(1.0, 0.0);
        let zc = self.center_image;
        let target = (zc - z * zc.conj()) / (one - z);
        let x = target.sqrt();
        let k2 = self.modulus * self.modulus;
        let mut w = x * carlson_rf(one - x * x, one - x * x * k2, one);
        for _ in 0..3 {
            let (sn, cn, dn) = self.theta.sncndn(w);
            let step = (sn * sn - target) / (sn * cn * dn * 2.0);
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            w -= step;
            if step.norm() < 1e-15 * (1.0 + w.norm()) {
                break;
            }
        }
        Ok(self.anchor + w / self.factor)
    }
}

/// Hyperbolic distance between two interior points of `R`.
pub fn rect_distance(w1: Complex64, w2: Complex64, rect: &RectangleDomain) -> Result<f64> {
    if !rect.contains(w2) {
        return Err(Error::domain(format!("{w2} not inside the rectangle")));
    }
    let map = build_rect_map(rect, w1)?;
    let z2 = map
        .to_half_plane(w2)
        .ok_or_else(|| Error::domain("point maps to infinity"))?;
    half_plane_distance(map.center_image, z2)
}
