//! Special functions: log-gamma, digamma, Riemann and Hurwitz zeta,
//! the von Mangoldt function, complete elliptic integrals and Jacobi `sn`.
//!
//! Everything here is a pure function of its inputs and works in 64-bit
//! floating point. Long series use compensated summation.

mod arith;
mod elliptic;
mod gamma;
mod sum;
mod zeta;

pub use arith::{factorize, gcd, is_prime, primes_up_to, von_mangoldt};
pub use elliptic::{
    carlson_rf, elliptic_k, elliptic_k_complement, jacobi_sn, jacobi_sncndn, nome,
    solve_modulus_for_ratio,
};
pub(crate) use elliptic::ThetaSn;
pub use gamma::{digamma, log_gamma};
pub use sum::CompensatedSum;
pub(crate) use sum::sum_real;
pub(crate) use zeta::{periodic_series, PeriodicMode};
pub use zeta::{hurwitz_zeta, riemann_zeta, riemann_zeta_with_derivative, zeta_times_s_minus_one};

use crate::error::{Error, Result};

/// A point of the complex plane, `s = σ + it`.
pub type ComplexValue = num_complex::Complex64;

/// Accuracy and truncation controls for the zeta-type series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Absolute error the Euler–Maclaurin truncation aims for.
    pub target_abs_tol: f64,
    /// Smallest truncation point of the direct sum.
    pub series_cutoff: usize,
    /// Number of Bernoulli correction terms, at most 12.
    pub euler_maclaurin_order: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            target_abs_tol: 1e-12,
            series_cutoff: 10,
            euler_maclaurin_order: 12,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::domain("target_abs_tol must be positive"));
        }
        if self.series_cutoff == 0 {
            return Err(Error::domain("series_cutoff must be positive"));
        }
        if self.euler_maclaurin_order == 0 || self.euler_maclaurin_order > 12 {
            return Err(Error::domain("euler_maclaurin_order must lie in 1..=12"));
        }
        Ok(())
    }
}

/// `B_{2k} / (2k)!` for k = 1..=12.
pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
];

/// Bernoulli numbers `B_{2k}` for k = 1..=8 (Stirling series).
pub(crate) const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];
