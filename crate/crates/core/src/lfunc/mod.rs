//! The L-function data model: three built-in families with evaluation,
//! completion, coefficients and the analytic conductor.

mod character;

pub use character::{
    is_fundamental_discriminant, kronecker, primitive_characters, quadratic_character,
    CharacterGroup, DirichletCharacter,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{
    log_gamma, periodic_series, primes_up_to, riemann_zeta, von_mangoldt, zeta_times_s_minus_one,
    EvalOptions, PeriodicMode,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Zeta,
    Dirichlet(DirichletCharacter),
    DedekindQuadratic { discriminant: i64, character: DirichletCharacter },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Zeta => "zeta",
            Family::Dirichlet(_) => "dirichlet",
            Family::DedekindQuadratic { .. } => "dedekind",
        }
    }
}

/// A member of the L-function class: degree, conductor, gamma shifts,
/// Ramanujan exponent, pole order and root number, plus the family data
/// that determines its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LFunctionSpec {
    degree: usize,
    conductor: u64,
    mu: Vec<Complex64>,
    theta: f64,
    pole_order: u32,
    root_number: Complex64,
    order_at_zero: i32,
    family: Family,
    opts: EvalOptions,
}

/// Serializable summary of a spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<String>,
    pub m: usize,
    #[serde(rename = "N")]
    pub conductor: u64,
    pub mu: Vec<[f64; 2]>,
    pub theta: f64,
    pub r: u32,
    pub kappa: [f64; 2],
}

impl LFunctionSpec {
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn conductor(&self) -> u64 {
        self.conductor
    }
    pub fn mu(&self) -> &[Complex64] {
        &self.mu
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }
    pub fn root_number(&self) -> Complex64 {
        self.root_number
    }
    /// Order of vanishing of `L(s)` at `s = 0`.
    pub fn order_at_zero(&self) -> i32 {
        self.order_at_zero
    }
    pub fn family(&self) -> &Family {
        &self.family
    }
    pub fn eval_options(&self) -> &EvalOptions {
        &self.opts
    }

    /// Replace the evaluation options used by `evaluate` and friends.
    pub fn with_options(mut self, opts: EvalOptions) -> Result<Self> {
        opts.validate()?;
        self.opts = opts;
        Ok(self)
    }

    /// All coefficients of the spec are real (the zero set is symmetric
    /// under conjugation).
    pub fn has_real_coefficients(&self) -> bool {
        match &self.family {
            Family::Zeta | Family::DedekindQuadratic { .. } => true,
            Family::Dirichlet(chi) => chi.is_real(),
        }
    }

    /// Short parameter label, free of commas, used in reports.
    pub fn label(&self) -> String {
        match &self.family {
            Family::Zeta => "zeta".to_string(),
            Family::Dirichlet(chi) => chi.label(),
            Family::DedekindQuadratic { discriminant, .. } => format!("D{discriminant}"),
        }
    }

    pub fn record(&self) -> SpecRecord {
        let (q, discriminant, character) = match &self.family {
            Family::Zeta => (None, None, None),
            Family::Dirichlet(chi) => (Some(chi.modulus()), None, Some(chi.label())),
            Family::DedekindQuadratic { discriminant, .. } => (None, Some(*discriminant), None),
        };
        SpecRecord {
            family: self.family.name().to_string(),
            q,
            discriminant,
            character,
            m: self.degree,
            conductor: self.conductor,
            mu: self.mu.iter().map(|m| [m.re, m.im]).collect(),
            theta: self.theta,
            r: self.pole_order,
            kappa: [self.root_number.re, self.root_number.im],
        }
    }

    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::domain(format!("spec invariant violated: {what}")));
        if self.mu.len() != self.degree {
            return fail("length(mu) = m");
        }
        if self.mu.iter().any(|m| m.re <= -1.0) {
            return fail("Re(mu_j) > -1");
        }
        let closed = self
            .mu
            .iter()
            .all(|m| self.mu.iter().filter(|x| (*x - m).norm() < 1e-12).count()
                == self.mu.iter().filter(|x| (*x - m.conj()).norm() < 1e-12).count());
        if !closed {
            return fail("mu closed under conjugation");
        }
        if (self.root_number.norm() - 1.0).abs() > 1e-12 {
            return fail("|kappa| = 1");
        }
        if self.pole_order as usize > self.degree {
            return fail("0 <= r <= m");
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return fail("theta in [0, 1]");
        }
        Ok(())
    }

    fn finish(self) -> Result<Self> {
        self.check_invariants()?;
        Ok(self)
    }
}

/// `ord_{s=0} L`: each gamma factor `Γ_R(s)` with `μ = 0` has a pole at the
/// origin that `L` must cancel, and each pole of `ξ` at `s = 0` (mirroring
/// the one at `s = 1`) absorbs one of them.
fn order_at_zero(mu: &[Complex64], pole_order: u32) -> i32 {
    mu.iter().filter(|m| m.norm() == 0.0).count() as i32 - pole_order as i32
}

pub fn make_zeta() -> LFunctionSpec {
    LFunctionSpec {
        degree: 1,
        conductor: 1,
        mu: vec![Complex64::new(0.0, 0.0)],
        theta: 0.0,
        pole_order: 1,
        root_number: Complex64::new(1.0, 0.0),
        order_at_zero: 0,
        family: Family::Zeta,
        opts: EvalOptions::default(),
    }
}

fn dirichlet_root_number(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus() as f64;
    let i_kappa = if chi.parity() == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
    let eps = chi.gauss_sum() / (i_kappa * q.sqrt());
    eps / eps.norm()
}

pub fn make_dirichlet(chi: &DirichletCharacter) -> Result<LFunctionSpec> {
    if !chi.is_primitive() || chi.modulus() < 3 {
        return Err(Error::NonPrimitive(chi.modulus()));
    }
    let mu = vec![Complex64::new(chi.parity() as f64, 0.0)];
    LFunctionSpec {
        degree: 1,
        conductor: chi.modulus(),
        order_at_zero: order_at_zero(&mu, 0),
        mu,
        theta: 0.0,
        pole_order: 0,
        root_number: dirichlet_root_number(chi),
        family: Family::Dirichlet(chi.clone()),
        opts: EvalOptions::default(),
    }
    .finish()
}

pub fn make_dedekind_quadratic(discriminant: i64) -> Result<LFunctionSpec> {
    let chi = quadratic_character(discriminant)?;
    if discriminant.unsigned_abs() < 3 {
        return Err(Error::NotFundamental(discriminant));
    }
    let mu = vec![Complex64::new(0.0, 0.0), Complex64::new(chi.parity() as f64, 0.0)];
    LFunctionSpec {
        degree: 2,
        conductor: discriminant.unsigned_abs(),
        order_at_zero: order_at_zero(&mu, 1),
        mu,
        theta: 0.0,
        pole_order: 1,
        root_number: Complex64::new(1.0, 0.0),
        family: Family::DedekindQuadratic { discriminant, character: chi },
        opts: EvalOptions::default(),
    }
    .finish()
}

fn dirichlet_l(chi: &DirichletCharacter, s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    periodic_series(s, chi.table_shifted(), opts, PeriodicMode::Plain)
}

fn check_evaluation_domain(s: Complex64) -> Result<()> {
    if !(s.re > -2.0) || !s.im.is_finite() {
        return Err(Error::domain(format!("evaluation needs Re(s) > -2, got {s}")));
    }
    Ok(())
}

/// `L(s)` by analytic continuation.
pub fn evaluate(spec: &LFunctionSpec, s: Complex64) -> Result<Complex64> {
    check_evaluation_domain(s)?;
    let opts = &spec.opts;
    match &spec.family {
        Family::Zeta => riemann_zeta(s, opts),
        Family::Dirichlet(chi) => dirichlet_l(chi, s, opts),
        Family::DedekindQuadratic { character, .. } => {
            Ok(riemann_zeta(s, opts)? * dirichlet_l(character, s, opts)?)
        }
    }
}

/// `(s-1)^{r_L} L(s)`, entire.
pub fn evaluate_regularized(spec: &LFunctionSpec, s: Complex64) -> Result<Complex64> {
    check_evaluation_domain(s)?;
    let opts = &spec.opts;
    match &spec.family {
        Family::Zeta => zeta_times_s_minus_one(s, opts),
        Family::Dirichlet(chi) => dirichlet_l(chi, s, opts),
        Family::DedekindQuadratic { character, .. } => {
            Ok(zeta_times_s_minus_one(s, opts)? * dirichlet_l(character, s, opts)?)
        }
    }
}

/// `log(N^{s/2} Π_j Γ_R(s + μ_j))` on the principal branches of `log Γ`.
pub fn log_gamma_factor(spec: &LFunctionSpec, s: Complex64) -> Result<Complex64> {
    let mut acc = s * 0.5 * (spec.conductor as f64).ln();
    for &mu in &spec.mu {
        let z = s + mu;
        acc += -z * 0.5 * PI.ln() + log_gamma(z * 0.5)?;
    }
    Ok(acc)
}

/// `ξ_L(s) = L(s) N^{s/2} Π_j Γ_R(s + μ_j)`, evaluated directly.
pub fn completed(spec: &LFunctionSpec, s: Complex64) -> Result<Complex64> {
    if spec.pole_order > 0 && s.norm() == 0.0 {
        return Err(Error::pole(s));
    }
    let g = log_gamma_factor(spec, s)?;
    Ok(evaluate(spec, s)? * g.exp())
}

/// `|ξ(s) - κ·conj(ξ(1 - conj s))| / max(|ξ(s)|, 1e-300)`.
pub fn functional_equation_residual(spec: &LFunctionSpec, s: Complex64) -> Result<f64> {
    let lhs = completed(spec, s)?;
    let reflected = completed(spec, Complex64::new(1.0, 0.0) - s.conj())?;
    let rhs = spec.root_number * reflected.conj();
    Ok((lhs - rhs).norm() / lhs.norm().max(1e-300))
}

/// `C_L(T) = N_L Π_j (|iT + μ_j| + 3)`.
pub fn analytic_conductor(spec: &LFunctionSpec, t: f64) -> f64 {
    spec.mu
        .iter()
        .map(|&mu| (Complex64::new(0.0, t) + mu).norm() + 3.0)
        .product::<f64>()
        * spec.conductor as f64
}

/// `C_L(T) / π^m`; for Dirichlet L-functions this is `(q/π)(|iT+κ|+3)`.
pub fn analytic_conductor_pi_normalized(spec: &LFunctionSpec, t: f64) -> f64 {
    analytic_conductor(spec, t) / PI.powi(spec.degree as i32)
}

/// `Λ_L(n)`, the coefficients of `-L'/L`.
pub fn lambda_coeff(spec: &LFunctionSpec, n: u64) -> Complex64 {
    let lam = von_mangoldt(n);
    if lam == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    match &spec.family {
        Family::Zeta => Complex64::new(lam, 0.0),
        Family::Dirichlet(chi) => chi.value(n as i64) * lam,
        Family::DedekindQuadratic { character, .. } => (character.value(n as i64) + 1.0) * lam,
    }
}

/// Dirichlet coefficient `a_L(n)`.
pub fn dirichlet_coefficient(spec: &LFunctionSpec, n: u64) -> Complex64 {
    match &spec.family {
        Family::Zeta => Complex64::new(1.0, 0.0),
        Family::Dirichlet(chi) => chi.value(n as i64),
        Family::DedekindQuadratic { character, .. } => (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| character.value(d as i64))
            .sum(),
    }
}

/// Euler product over primes `p ≤ prime_limit`, summed as `-Σ log(1 - a/p^s)`.
pub fn euler_product(spec: &LFunctionSpec, s: Complex64, prime_limit: usize) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::domain(format!("Euler product needs Re(s) > 1, got {s}")));
    }
    let mut log_sum = crate::specfun::CompensatedSum::new();
    for p in primes_up_to(prime_limit) {
        let ps = (-s * (p as f64).ln()).exp();
        let locals: Vec<Complex64> = match &spec.family {
            Family::Zeta => vec![Complex64::new(1.0, 0.0)],
            Family::Dirichlet(chi) => vec![chi.value(p as i64)],
            Family::DedekindQuadratic { character, .. } => {
                vec![Complex64::new(1.0, 0.0), character.value(p as i64)]
            }
        };
        for a in locals {
            if a.norm() > 0.0 {
                log_sum.add(-(Complex64::new(1.0, 0.0) - a * ps).ln());
            }
        }
    }
    Ok(log_sum.value().exp())
}

/// Estimate `ord_{s=0} L` from the decay of `|L(h)|` as `h → 0`.
pub fn probe_order_at_zero(spec: &LFunctionSpec) -> Result<i32> {
    let (h1, h2) = (1e-2, 1e-4);
    let v1 = evaluate(spec, Complex64::new(h1, 0.0))?.norm();
    let v2 = evaluate(spec, Complex64::new(h2, 0.0))?.norm();
    Ok(((v1 / v2).ln() / (h1 / h2).ln()).round() as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quadratic_spec(d: i64) -> LFunctionSpec {
        make_dirichlet(&quadratic_character(d).unwrap()).unwrap()
    }

    #[test]
    fn zeta_spec_fields() {
        let z = make_zeta();
        assert_eq!(z.degree(), 1);
        assert_eq!(z.conductor(), 1);
        assert_eq!(z.pole_order(), 1);
        assert_eq!(analytic_conductor(&z, 0.0), 3.0);
        assert_eq!(analytic_conductor(&z, 1.0), 4.0);
        assert!(z.check_invariants().is_ok());
        for n in 2..=100 {
            assert_eq!(lambda_coeff(&z, n).re, von_mangoldt(n));
        }
        assert!((lambda_coeff(&z, 4).re - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_parity_and_conductor() {
        let s3 = quadratic_spec(-3);
        assert_eq!(s3.mu(), &[c(1.0, 0.0)]);
        assert_eq!(s3.conductor(), 3);
        let s5 = quadratic_spec(5);
        assert_eq!(s5.mu(), &[c(0.0, 0.0)]);
        assert_eq!(analytic_conductor(&s5, 0.0), 15.0);
        assert!((analytic_conductor_pi_normalized(&s5, 0.0) - 15.0 / PI).abs() < 1e-12);
        assert!((lambda_coeff(&s3, 5) - c(-(5f64.ln()), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn non_primitive_rejected() {
        let group = CharacterGroup::new(9).unwrap();
        let trivial = group.character(&[0]).unwrap();
        assert_eq!(make_dirichlet(&trivial), Err(Error::NonPrimitive(9)));
        assert_eq!(make_dedekind_quadratic(12 * 4), Err(Error::NotFundamental(48)));
    }

    #[test]
    fn dedekind_fields_and_product() {
        let d5 = make_dedekind_quadratic(5).unwrap();
        assert_eq!((d5.degree(), d5.conductor()), (2, 5));
        assert_eq!(d5.mu(), &[c(0.0, 0.0), c(0.0, 0.0)]);
        let d3 = make_dedekind_quadratic(-3).unwrap();
        assert_eq!(d3.mu(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(d3.conductor(), 3);
        let s = c(2.0, 0.0);
        let prod = evaluate(&make_zeta(), s).unwrap() * evaluate(&quadratic_spec(5), s).unwrap();
        assert!((evaluate(&d5, s).unwrap() - prod).norm() < 1e-12);
    }

    #[test]
    fn classical_values() {
        let z = evaluate(&make_zeta(), c(2.0, 0.0)).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
        let catalan = evaluate(&quadratic_spec(-4), c(2.0, 0.0)).unwrap();
        assert!((catalan.re - 0.915_965_594_177_219_1).abs() < 1e-12);
        // L(1, χ_{-3}) = π / (3√3)
        let l1 = evaluate(&quadratic_spec(-3), c(1.0, 0.0)).unwrap();
        assert!((l1.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-11);
        assert!(evaluate(&make_zeta(), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn root_numbers_of_real_characters_are_one() {
        for d in [-3, -4, 5, -7, 8, -8, 12, 13] {
            let k = quadratic_spec(d).root_number();
            assert!((k - 1.0).norm() < 1e-12, "D={d} kappa={k}");
        }
    }

    #[test]
    fn functional_equation_examples() {
        assert!(functional_equation_residual(&make_zeta(), c(0.3, 2.0)).unwrap() < 1e-9);
        for chi in primitive_characters(7).unwrap() {
            let spec = make_dirichlet(&chi).unwrap();
            assert!(functional_equation_residual(&spec, c(0.25, 3.0)).unwrap() < 1e-8);
        }
        let d = make_dedekind_quadratic(-3).unwrap();
        assert!(functional_equation_residual(&d, c(0.6, 1.5)).unwrap() < 1e-8);
    }

    #[test]
    fn completed_zeta_at_half_is_negative_real() {
        let xi = completed(&make_zeta(), c(0.5, 0.0)).unwrap();
        assert!(xi.re < 0.0 && xi.im.abs() < 1e-14);
        let spec = quadratic_spec(-3);
        let a = completed(&spec, c(0.3, 5.0)).unwrap().norm();
        let b = completed(&spec, c(0.7, 5.0)).unwrap().norm();
        assert!((a - b).abs() <= 1e-9 * a);
    }

    #[test]
    fn order_at_zero_matches_probe() {
        let mut specs = vec![make_zeta(), quadratic_spec(-3), quadratic_spec(5), quadratic_spec(-4)];
        specs.push(make_dedekind_quadratic(5).unwrap());
        specs.push(make_dedekind_quadratic(-4).unwrap());
        let expected = [0, 0, 1, 0, 1, 0];
        for (spec, &e) in specs.iter().zip(&expected) {
            assert_eq!(spec.order_at_zero(), e, "{}", spec.label());
            assert_eq!(probe_order_at_zero(spec).unwrap(), e, "{}", spec.label());
        }
    }

    #[test]
    fn euler_product_agrees_with_continuation() {
        let specs = [make_zeta(), quadratic_spec(-3), make_dedekind_quadratic(5).unwrap()];
        for spec in &specs {
            for s in [c(3.0, 0.0), c(2.5, 7.0), c(4.0, -20.0)] {
                let e = euler_product(spec, s, 100_000).unwrap();
                let v = evaluate(spec, s).unwrap();
                assert!((e - v).norm() < 1e-8, "{} at {s}: {e} vs {v}", spec.label());
            }
        }
    }

    #[test]
    fn record_serializes_expected_keys() {
        let rec = make_dedekind_quadratic(-4).unwrap().record();
        let json = serde_json::to_value(&rec).unwrap();
        for key in ["family", "D", "m", "N", "mu", "theta", "r", "kappa"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
    }
}
