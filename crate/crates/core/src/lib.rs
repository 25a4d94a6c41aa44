//! Zeros of L-functions near a given height, the explicit gap bounds that
//! control them, and numerical checks of the supporting inequalities.
//!
//! Modules, bottom up:
//! - [`specfun`]: log-gamma, Riemann and Hurwitz zeta, elliptic functions.
//! - [`lfunc`]: zeta, primitive Dirichlet and quadratic Dedekind L-functions.
//! - [`zeroscan`]: Hardy Z scanning with argument-principle counts.
//! - [`gapbounds`]: gap-bound formulas on a log-scale conductor.
//! - [`hypgeo`]: hyperbolic distance in disks, strips and rectangles.
//! - [`paperchecks`]: grid checks of the explicit L-function inequalities.
//! - [`harness`]: sweeps, reports and the `verify` pipeline.

pub mod error;
pub mod gapbounds;
pub mod harness;
pub mod hypgeo;
pub mod lfunc;
pub mod paperchecks;
pub mod specfun;
pub mod zeroscan;

pub use error::{Error, Result};
