//! Explicit zero-gap bounds evaluated on iterated-logarithm scales.
//!
//! Every formula depends on the conductor only through `log log C`, so the
//! input is normalized to that quantity and conversions back to `C` or
//! `log C` report overflow instead of returning infinities.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfunc::LFunctionSpec;
use crate::zeroscan::GapReport;

/// Largest `x` with `exp(x)` finite.
const EXP_LIMIT: f64 = 709.78;

/// A conductor (or height) given through one of `C`, `log C`, `log log C`,
/// stored as `log log C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScale {
    loglog: f64,
}

impl LogScale {
    pub fn from_c(c: f64) -> Result<Self> {
        if c.is_infinite() {
            return Err(Error::Overflow("C is not representable".into()));
        }
        if !(c > 1.0) {
            return Err(Error::domain(format!("C = {c} must exceed 1")));
        }
        Ok(LogScale { loglog: c.ln().ln() })
    }

    pub fn from_log_c(log_c: f64) -> Result<Self> {
        if log_c.is_infinite() {
            return Err(Error::Overflow("log C is not representable".into()));
        }
        if !(log_c > 0.0) {
            return Err(Error::domain(format!("log C = {log_c} must be positive")));
        }
        Ok(LogScale { loglog: log_c.ln() })
    }

    pub fn from_loglog_c(loglog_c: f64) -> Result<Self> {
        if !(loglog_c > 0.0) || !loglog_c.is_finite() {
            return Err(Error::domain(format!("log log C = {loglog_c} must be positive and finite")));
        }
        Ok(LogScale { loglog: loglog_c })
    }

    /// Scale with prescribed `log log log C`.
    pub fn from_logloglog_c(l3: f64) -> Result<Self> {
        if l3 > EXP_LIMIT {
            return Err(Error::Overflow(format!("log log log C = {l3} too large")));
        }
        Self::from_loglog_c(l3.exp())
    }

    pub fn loglog_c(&self) -> f64 {
        self.loglog
    }

    pub fn log_c(&self) -> Result<f64> {
        if self.loglog > EXP_LIMIT {
            return Err(Error::Overflow(format!("log C = exp({}) overflows", self.loglog)));
        }
        Ok(self.loglog.exp())
    }

    pub fn c(&self) -> Result<f64> {
        let log_c = self.log_c()?;
        if log_c > EXP_LIMIT {
            return Err(Error::Overflow(format!("C = exp({log_c}) overflows")));
        }
        Ok(log_c.exp())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    /// Absent when the formula is inapplicable.
    pub value: Option<f64>,
    /// Denominator of the formula; `NaN` (serialized as null) where an
    /// iterated logarithm inside it is undefined.
    pub denominator: f64,
    pub note: String,
    /// The denominator is within 10% of changing sign, so the dropped
    /// lower-order term could decide applicability.
    pub edge_regime: bool,
}

impl BoundResult {
    fn from_parts(numerator: f64, denominator: f64, note: String, edge_regime: bool) -> Self {
        let value = (denominator > 0.0).then(|| numerator / denominator);
        BoundResult { value, denominator, note, edge_regime }
    }

    fn undefined(note: &str) -> Self {
        BoundResult { value: None, denominator: f64::NAN, note: note.to_string(), edge_regime: false }
    }

    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }
}

fn check_degree(m: u32, theta: f64) -> Result<()> {
    if m == 0 {
        return Err(Error::domain("degree m must be at least 1"));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::domain(format!("theta = {theta} outside [0, 1]")));
    }
    Ok(())
}

/// `(π/4)(1+2ϑ) / [log X - log log log X - (4 + log 2)]` with
/// `X = log log C / log(m+2)`, the `o(1)` taken as zero.
pub fn thm1_bound(m: u32, theta: f64, scale: LogScale) -> Result<BoundResult> {
    check_degree(m, theta)?;
    let x = scale.loglog_c() / (m as f64 + 2.0).ln();
    if !(x > 1.0) {
        return Err(Error::domain(format!("X = {x} must exceed 1")));
    }
    let log_x = x.ln();
    let loglog_x = log_x.ln();
    if loglog_x <= 1.0 {
        return Ok(BoundResult::undefined("log log X <= 1: outside the formula's range"));
    }
    let denominator = log_x - loglog_x.ln() - (4.0 + 2f64.ln());
    let edge = denominator.abs() < 0.1 * log_x;
    let note = if edge {
        "leading order, o(1) dropped; edge regime".to_string()
    } else {
        "leading order, o(1) dropped".to_string()
    };
    Ok(BoundResult::from_parts(PI / 4.0 * (1.0 + 2.0 * theta), denominator, note, edge))
}

/// Leading term `(π/2)(1+2ϑ) / log log log C^{1/m}`; the second-order term
/// has an unspecified constant and is not added. Treated as applicable once
/// the triple logarithm exceeds one, where the leading term dominates the
/// omitted correction.
pub fn thm2_bound(m: u32, theta: f64, scale: LogScale) -> Result<BoundResult> {
    check_degree(m, theta)?;
    let loglog_root = scale.loglog_c() - (m as f64).ln();
    if !(loglog_root > 0.0) {
        return Ok(BoundResult::undefined("log log C^{1/m} <= 0: triple log undefined"));
    }
    let l3 = loglog_root.ln();
    let note = "leading term only, second-order term omitted".to_string();
    if l3 <= 1.0 {
        return Ok(BoundResult {
            value: None,
            denominator: l3,
            note: format!("{note}; log log log C^(1/m) <= 1"),
            edge_regime: false,
        });
    }
    Ok(BoundResult::from_parts(PI / 2.0 * (1.0 + 2.0 * theta), l3, note, false))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicalKind {
    HallHayman,
    Siegel,
    Littlewood,
}

impl std::str::FromStr for ClassicalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hall-hayman" | "hall_hayman" => Ok(ClassicalKind::HallHayman),
            "siegel" => Ok(ClassicalKind::Siegel),
            "littlewood" => Ok(ClassicalKind::Littlewood),
            other => Err(Error::Usage(format!("unknown bound kind {other}"))),
        }
    }
}

/// Earlier gap bounds in terms of `L₃ = log log log` of the height (or the
/// modulus for Siegel's bound).
pub fn classical_bounds(kind: ClassicalKind, scale: LogScale) -> Result<BoundResult> {
    let l3 = scale.loglog_c().ln();
    match kind {
        ClassicalKind::HallHayman => {
            if l3 <= 0.0 {
                return Ok(BoundResult::undefined("L3 <= 0: L5 undefined"));
            }
            let l5 = l3.ln().ln();
            if !l5.is_finite() {
                return Ok(BoundResult::undefined("L3 <= 1: L5 undefined"));
            }
            let d = l3 - l5 - 32.0;
            Ok(BoundResult::from_parts(PI / 4.0, d, "Hall-Hayman".into(), false))
        }
        ClassicalKind::Siegel => {
            Ok(BoundResult::from_parts(PI, l3, "Siegel, leading term".into(), false))
        }
        ClassicalKind::Littlewood => {
            Ok(BoundResult::from_parts(32.0, l3, "Littlewood, A = 32".into(), false))
        }
    }
}

/// Fill the bound fields of a report from an explicit conductor scale and
/// set the consistency flag. A violated applicable bound is logged as a
/// falsification event.
pub fn annotate_with_scale(
    mut report: GapReport,
    m: u32,
    theta: f64,
    scale: LogScale,
) -> Result<GapReport> {
    let inapplicable = |r: Result<BoundResult>| r.ok().and_then(|b| b.value);
    report.thm1_bound = inapplicable(thm1_bound(m, theta, scale));
    report.thm2_bound = inapplicable(thm2_bound(m, theta, scale));
    report.thm1_applicable = report.thm1_bound.is_some();
    report.thm2_applicable = report.thm2_bound.is_some();
    report.tighter_bound = match (report.thm1_bound, report.thm2_bound) {
        (Some(a), Some(b)) => Some(if a <= b { "thm1" } else { "thm2" }.to_string()),
        (Some(_), None) => Some("thm1".to_string()),
        (None, Some(_)) => Some("thm2".to_string()),
        (None, None) => None,
    };
    let d = report.nearest_distance;
    report.consistent = [report.thm1_bound, report.thm2_bound]
        .iter()
        .flatten()
        .all(|&bound| d <= bound);
    if !report.consistent {
        log::error!(
            "FALSIFICATION: {} {} T={} nearest distance {} exceeds bound (thm1 {:?}, thm2 {:?})",
            report.family,
            report.param,
            report.t,
            d,
            report.thm1_bound,
            report.thm2_bound
        );
    }
    Ok(report)
}

/// Annotate using the conductor already stored in the report.
pub fn annotate_gap_report(report: GapReport, spec: &LFunctionSpec) -> Result<GapReport> {
    let scale = LogScale::from_c(report.conductor)?;
    annotate_with_scale(report, spec.degree() as u32, spec.theta(), scale)
}
