//! Instance checks of the disk, rectangle and strip lemmas on fixed
//! families of analytic test functions. Hypotheses are verified by dense
//! sampling before the conclusion is tested.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{rect_distance, RectangleDomain};
use crate::error::{Error, Result};

/// Default number of boundary samples.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum TestFunction {
    Constant(Complex64),
    /// `Σ c_k z^k`
    Polynomial(Vec<Complex64>),
    /// `z e^{αz}`
    ZExp(Complex64),
    /// `scale·(φ_a(z) - φ_a(0))` with `φ_a(z) = (z - a)/(1 - ā z)`
    Mobius { a: Complex64, scale: Complex64 },
    /// `Π_j φ_{a_j}(z)`, a finite Blaschke product
    Blaschke(Vec<Complex64>),
    /// `amplitude·e^{rate (z - shift)}`
    Exp { amplitude: f64, rate: Complex64, shift: Complex64 },
    /// `Π_j (Q_j + z)^power`
    LinearPower { q: Vec<Complex64>, power: i32 },
}

fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

impl TestFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::Constant(c) => *c,
            TestFunction::Polynomial(coeffs) => {
                coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
            }
            TestFunction::ZExp(alpha) => z * (alpha * z).exp(),
            TestFunction::Mobius { a, scale } => {
                scale * (mobius(*a, z) - mobius(*a, Complex64::new(0.0, 0.0)))
            }
            TestFunction::Blaschke(zeros) => {
                zeros.iter().map(|&a| mobius(a, z)).product()
            }
            TestFunction::Exp { amplitude, rate, shift } => (rate * (z - shift)).exp() * *amplitude,
            TestFunction::LinearPower { q, power } => {
                q.iter().map(|&qj| (qj + z).powi(*power)).product()
            }
        }
    }
}

/// Both sides of a lemma's inequality at its worst sampled point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaOutcome {
    pub lhs: f64,
    pub rhs: f64,
    /// Positive when the inequality holds, in the lemma's natural units.
    pub margin: f64,
    pub holds: bool,
    pub samples: usize,
}

fn circle(r: f64, samples: usize) -> impl Iterator<Item = Complex64> {
    (0..samples).map(move |i| Complex64::from_polar(r, 2.0 * PI * i as f64 / samples as f64))
}

fn max_modulus(f: &TestFunction, r: f64, samples: usize) -> f64 {
    circle(r, samples).map(|z| f.eval(z).norm()).fold(0.0, f64::max)
}

/// `K(f) = sup Re f` over the disk, from the circle of radius 0.9999 and a
/// few interior circles.
fn sup_real_part(f: &TestFunction, samples: usize) -> f64 {
    [0.9999, 0.99, 0.9, 0.5]
        .iter()
        .flat_map(|&r| circle(r, samples))
        .map(|z| f.eval(z).re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Borel–Carathéodory type bound: with `M(r1) = K r1^c`, check
/// `M(r2) < 2K r2^c / (1 - r2^c)`.
pub fn lemma_borel_outcome(f: &TestFunction, r1: f64, r2: f64, samples: usize) -> Result<LemmaOutcome> {
    if !(0.0 < r1 && r1 < r2 && r2 < 1.0) {
        return Err(Error::domain(format!("need 0 < r1 < r2 < 1, got {r1}, {r2}")));
    }
    if f.eval(Complex64::new(0.0, 0.0)).norm() > 1e-12 {
        return Err(Error::domain("test function must vanish at the origin"));
    }
    let k = sup_real_part(f, samples);
    if !(k > 0.0) {
        return Err(Error::HypothesisRefuted(format!("K(f) = {k} is not positive")));
    }
    let m1 = max_modulus(f, r1, samples);
    if m1 == 0.0 {
        return Err(Error::domain("f vanishes identically; the lemma is vacuous"));
    }
    let c = (m1 / k).ln() / r1.ln();
    if !(c > 0.0) {
        return Err(Error::HypothesisRefuted(format!("exponent c = {c} is not positive")));
    }
    let lhs = max_modulus(f, r2, samples);
    let r2c = r2.powf(c);
    let rhs = 2.0 * k * r2c / (1.0 - r2c);
    Ok(LemmaOutcome { lhs, rhs, margin: rhs - lhs, holds: lhs < rhs, samples })
}

pub fn check_lemma_borel(f: &TestFunction, r1: f64, r2: f64) -> Result<bool> {
    Ok(lemma_borel_outcome(f, r1, r2, DEFAULT_SAMPLES)?.holds)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorelInstance {
    pub f: TestFunction,
    pub r1: f64,
    pub r2: f64,
}

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The documented Borel–Carathéodory instance set.
pub fn borel_family() -> Vec<BorelInstance> {
    let poly = |c: &[Complex64]| TestFunction::Polynomial(c.to_vec());
    let zero = cx(0.0, 0.0);
    let one = cx(1.0, 0.0);
    vec![
        BorelInstance { f: poly(&[zero, one]), r1: 0.3, r2: 0.6 },
        BorelInstance { f: poly(&[zero, zero, one]), r1: 0.5, r2: 0.9 },
        BorelInstance { f: TestFunction::ZExp(one), r1: 0.4, r2: 0.8 },
        BorelInstance { f: poly(&[zero, zero, zero, one]), r1: 0.2, r2: 0.95 },
        BorelInstance { f: poly(&[zero, cx(0.0, 1.0)]), r1: 0.1, r2: 0.5 },
        BorelInstance { f: poly(&[zero, one, cx(0.5, 0.0)]), r1: 0.25, r2: 0.75 },
        BorelInstance { f: poly(&[zero, cx(2.0, 0.0), zero, cx(-1.0 / 3.0, 0.0)]), r1: 0.3, r2: 0.99 },
        BorelInstance { f: TestFunction::ZExp(cx(0.5, 0.0)), r1: 0.5, r2: 0.7 },
        BorelInstance { f: TestFunction::ZExp(cx(0.0, -1.0)), r1: 0.2, r2: 0.9 },
        BorelInstance { f: TestFunction::Mobius { a: cx(0.3, 0.2), scale: one }, r1: 0.4, r2: 0.8 },
        BorelInstance { f: TestFunction::Mobius { a: cx(-0.5, 0.0), scale: cx(0.0, 2.0) }, r1: 0.2, r2: 0.6 },
        BorelInstance { f: poly(&[zero, cx(0.5, 0.0), zero, zero, cx(0.3, 0.0)]), r1: 0.6, r2: 0.97 },
    ]
}

/// `sinh(πλξ) / sinh(πλ)`, evaluated without overflow for large `λ`.
pub fn siegel_sinh_ratio(lambda: f64, xi: f64) -> f64 {
    let a = PI * lambda;
    (a * (xi - 1.0)).exp() * (-(-2.0 * a * xi).exp_m1()) / (-(-2.0 * a).exp_m1())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiegelInstance {
    pub f: TestFunction,
    pub lambda: f64,
    pub xi: f64,
    pub m: f64,
    pub m0: f64,
}

/// Siegel's rectangle lemma: on `[0,1] × [-1/(2λ), 1/(2λ)]` with `Re f ≤ M`
/// and `|f| ≤ M0` on `x = 1`, check
/// `log|2M/f(ξ) - 1| / log|2M/M0 - 1| ≥ sinh(πλξ)/sinh(πλ)`.
pub fn lemma_siegel_outcome(inst: &SiegelInstance, samples: usize) -> Result<LemmaOutcome> {
    let SiegelInstance { f, lambda, xi, m, m0 } = inst;
    let (lambda, xi, m, m0) = (*lambda, *xi, *m, *m0);
    if !(lambda > 0.0 && 0.0 < xi && xi < 1.0 && 0.0 < m0 && m0 < m) {
        return Err(Error::domain("need lambda > 0, 0 < xi < 1, 0 < M0 < M"));
    }
    let half = 1.0 / (2.0 * lambda);
    let side = (samples as f64).sqrt().ceil() as usize;
    for i in 0..=side {
        for j in 0..=side {
            let z = cx(i as f64 / side as f64, -half + 2.0 * half * j as f64 / side as f64);
            let v = f.eval(z).re;
            if v > m * (1.0 + 1e-12) {
                return Err(Error::HypothesisRefuted(format!("Re f({z}) = {v} exceeds M = {m}")));
            }
        }
    }
    for j in 0..=samples {
        let z = cx(1.0, -half + 2.0 * half * j as f64 / samples as f64);
        let v = f.eval(z).norm();
        if v > m0 * (1.0 + 1e-12) {
            return Err(Error::HypothesisRefuted(format!("|f({z})| = {v} exceeds M0 = {m0}")));
        }
    }
    let f_xi = f.eval(cx(xi, 0.0));
    let lhs = (cx(2.0 * m, 0.0) / f_xi - 1.0).norm().ln() / (2.0 * m / m0 - 1.0).abs().ln();
    let rhs = siegel_sinh_ratio(lambda, xi);
    Ok(LemmaOutcome { lhs, rhs, margin: lhs - rhs, holds: lhs >= rhs - 1e-9, samples })
}

pub fn check_lemma_siegel(f: &TestFunction, lambda: f64, xi: f64, m: f64, m0: f64) -> Result<bool> {
    let inst = SiegelInstance { f: f.clone(), lambda, xi, m, m0 };
    Ok(lemma_siegel_outcome(&inst, DEFAULT_SAMPLES)?.holds)
}

/// The documented instance set for Siegel's lemma.
pub fn siegel_family() -> Vec<SiegelInstance> {
    let mut out = Vec::new();
    for (lambda, xi) in [(0.5, 0.3), (1.0, 0.5), (2.0, 0.5)] {
        out.push(SiegelInstance { f: TestFunction::Constant(cx(1.5, 0.0)), lambda, xi, m: 4.0, m0: 1.5 });
    }
    for (k, lambda, xi) in [(5.0, 1.0, 0.5), (1.0, 2.0, 0.2), (10.0, 0.7, 0.8), (3.0, 3.0, 0.9)] {
        out.push(SiegelInstance {
            f: TestFunction::Exp { amplitude: 2.0, rate: cx(k, 0.0), shift: cx(1.0, 0.0) },
            lambda,
            xi,
            m: 2.0 * f64::exp(k),
            m0: 2.0,
        });
    }
    for (p, lambda, xi) in [(1usize, 1.0f64, 0.4), (2, 0.5, 0.6), (3, 2.0, 0.3)] {
        // largest modulus of z on the rectangle is at the right corners
        let corner = (1.0 + 1.0 / (4.0 * lambda * lambda)).sqrt();
        let scale = 1.0 / corner.powi(p as i32);
        let mut coeffs = vec![cx(0.0, 0.0); p + 1];
        coeffs[p] = cx(scale, 0.0);
        out.push(SiegelInstance { f: TestFunction::Polynomial(coeffs), lambda, xi, m: 2.0, m0: 1.0 });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RademacherInstance {
    pub g: TestFunction,
    pub a: f64,
    pub b: f64,
    pub big_a: f64,
    pub big_b: f64,
    pub alpha: f64,
    pub beta: f64,
    pub q: Vec<Complex64>,
    /// Samples cover `|t| ≤ t_max`.
    pub t_max: f64,
}

fn q_product(q: &[Complex64], s: Complex64, power: f64) -> f64 {
    q.iter().map(|&qj| (qj + s).norm().powf(power)).product()
}

/// Phragmén–Lindelöf interpolation across `a ≤ σ ≤ b`: boundary bounds are
/// verified on samples, then the interior bound is tested on a grid.
pub fn lemma_rademacher_outcome(inst: &RademacherInstance, samples: usize) -> Result<LemmaOutcome> {
    let RademacherInstance { g, a, b, big_a, big_b, alpha, beta, q, t_max } = inst;
    let (a, b, alpha, beta) = (*a, *b, *alpha, *beta);
    if !(a < b) {
        return Err(Error::domain("need a < b"));
    }
    if alpha < beta {
        return Err(Error::HypothesisRefuted(format!("alpha = {alpha} < beta = {beta}")));
    }
    if let Some(qj) = q.iter().find(|qj| qj.re + a <= 0.0) {
        return Err(Error::HypothesisRefuted(format!("Re(Q) + a <= 0 for Q = {qj}")));
    }
    let ts: Vec<f64> = (0..samples)
        .map(|i| -t_max + 2.0 * t_max * i as f64 / (samples - 1) as f64)
        .collect();
    for &t in &ts {
        for (sigma, bound, power) in [(a, *big_a, alpha), (b, *big_b, beta)] {
            let s = cx(sigma, t);
            let v = g.eval(s).norm();
            let cap = bound * q_product(q, s, power);
            if v > cap * (1.0 + 1e-12) {
                return Err(Error::HypothesisRefuted(format!("|g({s})| = {v} exceeds {cap}")));
            }
        }
    }
    let mut worst = LemmaOutcome { lhs: 0.0, rhs: 0.0, margin: f64::INFINITY, holds: true, samples: 0 };
    let n_sigma = 25;
    for i in 1..n_sigma {
        let sigma = a + (b - a) * i as f64 / n_sigma as f64;
        let wa = (b - sigma) / (b - a);
        let wb = (sigma - a) / (b - a);
        for &t in ts.iter().step_by(10) {
            let s = cx(sigma, t);
            let lhs = g.eval(s).norm();
            let rhs = (big_a * q_product(q, s, alpha)).powf(wa) * (big_b * q_product(q, s, beta)).powf(wb);
            let margin = (rhs - lhs) / rhs.max(1e-300);
            worst.samples += 1;
            if margin < worst.margin {
                worst.lhs = lhs;
                worst.rhs = rhs;
                worst.margin = margin;
            }
        }
    }
    worst.holds = worst.margin >= -1e-9;
    Ok(worst)
}

pub fn check_lemma_rademacher(inst: &RademacherInstance, samples: usize) -> Result<bool> {
    Ok(lemma_rademacher_outcome(inst, samples)?.holds)
}

/// The documented instance set for the strip interpolation lemma.
pub fn rademacher_family() -> Vec<RademacherInstance> {
    let t_max = 30.0;
    let sup_on_line = |q: &[Complex64], sigma: f64, power: i32| -> f64 {
        (0..=6000)
            .map(|i| {
                let s = cx(sigma, -t_max + 2.0 * t_max * i as f64 / 6000.0);
                q.iter().map(|&qj| (qj + s).norm().powi(power)).product::<f64>()
            })
            .fold(0.0, f64::max)
    };
    let lp = |q: Vec<Complex64>, power: i32| TestFunction::LinearPower { q, power };
    let inst = |g, a, b, big_a, big_b, alpha, beta, q: Vec<Complex64>| RademacherInstance {
        g,
        a,
        b,
        big_a,
        big_b,
        alpha,
        beta,
        q,
        t_max,
    };
    let shifted = cx((5.0 + 13f64.sqrt()) / 2.0, 0.0);
    vec![
        inst(TestFunction::Constant(cx(1.0, 0.0)), 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, vec![]),
        inst(lp(vec![cx(0.5, 0.0)], 1), 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, vec![cx(0.5, 0.0)]),
        inst(lp(vec![cx(1.0, 2.0)], 2), 0.0, 1.0, 1.0, 1.0, 2.0, 2.0, vec![cx(1.0, 2.0)]),
        inst(
            lp(vec![cx(1.0, 0.0)], 2),
            0.0,
            1.0,
            1.0,
            sup_on_line(&[cx(1.0, 0.0)], 1.0, 2),
            2.0,
            0.0,
            vec![cx(1.0, 0.0)],
        ),
        inst(
            TestFunction::Exp { amplitude: 1.0, rate: cx(1.0, 0.0), shift: cx(0.0, 0.0) },
            -1.5,
            2.5,
            (-1.5f64).exp(),
            2.5f64.exp(),
            0.0,
            0.0,
            vec![],
        ),
        inst(
            TestFunction::Exp { amplitude: 1.0, rate: cx(-2.0, 0.0), shift: cx(0.0, 0.0) },
            0.0,
            1.0,
            1.0,
            (-2f64).exp(),
            0.0,
            0.0,
            vec![],
        ),
        inst(
            lp(vec![cx(1.0, 0.0), cx(2.0, 1.0)], 1),
            0.0,
            2.0,
            1.0,
            1.0,
            1.0,
            1.0,
            vec![cx(1.0, 0.0), cx(2.0, 1.0)],
        ),
        inst(lp(vec![cx(0.2, 0.0)], 3), 0.0, 2.0, 1.0, 1.0, 3.0, 3.0, vec![cx(0.2, 0.0)]),
        inst(TestFunction::Constant(cx(3.0, 4.0)), -1.0, 1.0, 5.0, 5.0, 0.0, 0.0, vec![]),
        inst(lp(vec![cx(2.0, 0.0)], -1), -1.0, 1.0, 1.0, 1.0, -1.0, -1.0, vec![cx(2.0, 0.0)]),
        inst(
            lp(vec![shifted], 2),
            -1.5,
            2.5,
            1.0,
            sup_on_line(&[shifted], 2.5, 2),
            2.0,
            0.0,
            vec![shifted],
        ),
    ]
}

/// `tanh x > L/(1 + L)` with `L = log(1/(1-x))`, for `0 < x < 0.936`.
pub fn check_tanh_inequality(x: f64) -> Result<bool> {
    if !(x > 0.0 && x < 0.936) {
        return Err(Error::domain(format!("x = {x} outside (0, 0.936)")));
    }
    let l = -(-x).ln_1p();
    Ok(x.tanh() > l / (1.0 + l))
}

/// `1/r1 < m + 2` for `r1 = tanh(1 - e^{-1/(m+1)})`.
pub fn check_tanh_corollary(m: f64) -> bool {
    let r1 = (-(-1.0 / (m + 1.0)).exp_m1()).tanh();
    1.0 / r1 < m + 2.0
}

/// `|log(1+w)| ≤ |w|/(1-|w|)` for `|w| < 1`.
pub fn check_log1p_bound(w: Complex64) -> Result<bool> {
    let r = w.norm();
    if !(r < 1.0) {
        return Err(Error::domain(format!("|w| = {r} must be below 1")));
    }
    Ok((1.0 + w).ln().norm() <= r / (1.0 - r) + 1e-12)
}

/// `d(x, σ0 - x; R)` for `R = (0, σ0) × (-π/4, π/4)`.
pub fn lemma25_distance(sigma0: f64, x: f64) -> Result<f64> {
    let rect = RectangleDomain::new(0.0, sigma0, -PI / 4.0, PI / 4.0)?;
    if (2.0 * x - sigma0).abs() < 1e-15 {
        return Ok(0.0);
    }
    rect_distance(cx(x, 0.0), cx(sigma0 - x, 0.0), &rect)
}

/// Holomorphic self-maps of the unit disk used for contraction checks.
pub fn schwarz_pick_maps() -> Vec<TestFunction> {
    vec![
        TestFunction::Polynomial(vec![cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)]),
        TestFunction::Polynomial(vec![cx(0.0, 0.0), cx(0.5, 0.0), cx(0.5, 0.0)]),
        TestFunction::Polynomial(vec![cx(0.1, 0.0), cx(0.6, 0.0), cx(0.0, 0.0), cx(0.2, 0.0)]),
        TestFunction::Blaschke(vec![cx(0.3, -0.4)]),
        TestFunction::Blaschke(vec![cx(0.0, 0.0), cx(0.5, 0.5)]),
        TestFunction::Blaschke(vec![cx(-0.2, 0.1), cx(0.6, 0.0), cx(0.0, -0.7)]),
    ]
}
