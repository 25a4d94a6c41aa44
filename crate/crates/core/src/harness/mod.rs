//! Sweep orchestration, report output and the verification pipeline.

mod verify;

pub use verify::{
    parse_suites, run_verify, run_verify_with, verify_exit_code, Suite, SuiteReport, VerifyReport,
};

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gapbounds::annotate_gap_report;
use crate::lfunc::{
    is_fundamental_discriminant, make_dedekind_quadratic, make_dirichlet, make_zeta,
    primitive_characters, LFunctionSpec,
};
use crate::zeroscan::{find_zeros, gap_at, mean_gap, GapReport, ZeroScan, DEFAULT_STEP};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for a passing run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a check fails.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySelector {
    Zeta,
    Dirichlet,
    Dedekind,
}

impl FromStr for FamilySelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zeta" => Ok(FamilySelector::Zeta),
            "dirichlet" => Ok(FamilySelector::Dirichlet),
            "dedekind" => Ok(FamilySelector::Dedekind),
            other => Err(Error::Config(format!("unknown family '{other}'"))),
        }
    }
}

/// Which primitive characters of each modulus enter a Dirichlet sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharSelector {
    All,
    /// Real characters only.
    Quadratic,
    /// Position in the enumeration order of the primitive characters.
    Index(usize),
}

impl FromStr for CharSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(CharSelector::All),
            "quadratic" | "real" => Ok(CharSelector::Quadratic),
            other => other
                .parse()
                .map(CharSelector::Index)
                .map_err(|_| Error::Config(format!("bad character selector '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: FamilySelector,
    pub q_min: u64,
    pub q_max: u64,
    pub chars: CharSelector,
    pub d_min: i64,
    pub d_max: i64,
    /// Heights `t_min, t_min + t_spacing, … ≤ t_max` at which rows are reported.
    pub t_min: f64,
    pub t_max: f64,
    pub t_spacing: f64,
    pub step: f64,
    pub tol: f64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            family: FamilySelector::Zeta,
            q_min: 3,
            q_max: 100,
            chars: CharSelector::All,
            d_min: -200,
            d_max: 200,
            t_min: 0.0,
            t_max: 0.0,
            t_spacing: 10.0,
            step: DEFAULT_STEP,
            tol: 1e-9,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad value '{value}' for '{key}'")))
}

/// `"a..b"`, `"a..=b"` or a single value `"a"`.
pub fn parse_range<T: FromStr + Copy>(key: &str, value: &str) -> Result<(T, T)> {
    let value = value.trim();
    match value.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((parse_value(key, a)?, parse_value(key, b)?))
        }
        None => {
            let v = parse_value(key, value)?;
            Ok((v, v))
        }
    }
}

/// Flat `key = value` lines; `#` starts a comment.
pub fn parse_flat_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl SweepConfig {
    /// Set one option by the name used in config files and CLI flags.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let key_norm = key.trim().trim_start_matches("--").replace('_', "-").to_ascii_lowercase();
        match key_norm.as_str() {
            "family" => self.family = value.parse()?,
            "q" => (self.q_min, self.q_max) = parse_range(key, value)?,
            "q-min" => self.q_min = parse_value(key, value)?,
            "q-max" => self.q_max = parse_value(key, value)?,
            "char" => self.chars = value.parse()?,
            "d" => (self.d_min, self.d_max) = parse_range(key, value)?,
            "d-min" => self.d_min = parse_value(key, value)?,
            "d-max" => self.d_max = parse_value(key, value)?,
            "t" => (self.t_min, self.t_max) = parse_range(key, value)?,
            "t-min" => self.t_min = parse_value(key, value)?,
            "t-max" => self.t_max = parse_value(key, value)?,
            "t-spacing" => self.t_spacing = parse_value(key, value)?,
            "step" => self.step = parse_value(key, value)?,
            "tol" => self.tol = parse_value(key, value)?,
            "workers" => self.workers = parse_value(key, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.parse()?,
            _ => return Err(Error::Config(format!("unknown option '{key}'"))),
        }
        Ok(())
    }

    /// Defaults overridden by `pairs` in order.
    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, &'a str)>>(pairs: I) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (k, v) in pairs {
            cfg.apply(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let map = parse_flat_config(&text)?;
        SweepConfig::from_pairs(map.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if !(self.step > 0.0) {
            return cfg(format!("step must be positive, got {}", self.step));
        }
        if !(self.t_spacing > 0.0) {
            return cfg(format!("t-spacing must be positive, got {}", self.t_spacing));
        }
        if !(self.t_min <= self.t_max) || !self.t_min.is_finite() || !self.t_max.is_finite() {
            return cfg(format!("empty T-range [{}, {}]", self.t_min, self.t_max));
        }
        if !(self.tol > 0.0) {
            return cfg(format!("tol must be positive, got {}", self.tol));
        }
        if self.workers == 0 {
            return cfg("workers must be at least 1".into());
        }
        match self.family {
            FamilySelector::Dirichlet if self.q_min > self.q_max => {
                cfg(format!("empty q-range {}..{}", self.q_min, self.q_max))
            }
            FamilySelector::Dedekind if self.d_min > self.d_max => {
                cfg(format!("empty D-range {}..{}", self.d_min, self.d_max))
            }
            _ => Ok(()),
        }
    }

    pub fn t_points(&self) -> Vec<f64> {
        let n = ((self.t_max - self.t_min) / self.t_spacing + 1e-9).floor() as usize;
        (0..=n).map(|i| self.t_min + self.t_spacing * i as f64).collect()
    }
}

/// The L-functions a configuration sweeps over, in report order.
pub fn sweep_specs(cfg: &SweepConfig) -> Result<Vec<LFunctionSpec>> {
    let specs = match cfg.family {
        FamilySelector::Zeta => vec![make_zeta()],
        FamilySelector::Dirichlet => {
            let mut out = Vec::new();
            for q in cfg.q_min.max(3)..=cfg.q_max {
                let chars = primitive_characters(q)?;
                let picked: Vec<_> = match cfg.chars {
                    CharSelector::All => chars,
                    CharSelector::Quadratic => chars.into_iter().filter(|c| c.is_real()).collect(),
                    CharSelector::Index(i) => chars.into_iter().nth(i).into_iter().collect(),
                };
                for chi in &picked {
                    out.push(make_dirichlet(chi)?);
                }
            }
            out
        }
        FamilySelector::Dedekind => (cfg.d_min..=cfg.d_max)
            .filter(|&d| d != 1 && is_fundamental_discriminant(d))
            .map(make_dedekind_quadratic)
            .collect::<Result<_>>()?,
    };
    if specs.is_empty() {
        return Err(Error::Config("the requested range contains no L-functions".into()));
    }
    Ok(specs)
}

const MAX_WIDENINGS: usize = 5;

fn rows_from_scan(spec: &LFunctionSpec, scan: &ZeroScan, t_points: &[f64]) -> Result<Vec<GapReport>> {
    t_points.iter().map(|&t| gap_at(spec, scan, t)).collect()
}

/// Every row's nearest zero lies closer than the window edge, so no zero
/// outside the window could be nearer.
fn nearest_is_certain(rows: &[GapReport], scan: &ZeroScan) -> bool {
    rows.iter()
        .all(|r| r.nearest_distance <= (r.t - scan.t_lo).min(scan.t_hi - r.t))
}

/// Scan one L-function around the requested heights and build its rows,
/// widening the window until the scan is complete and every nearest zero
/// is certain. Rows of a scan that never completes carry `complete = false`.
pub fn scan_point(spec: &LFunctionSpec, t_points: &[f64], step: f64) -> Result<Vec<GapReport>> {
    let (t_lo, t_hi) = (t_points[0], t_points[t_points.len() - 1]);
    let mut pad = t_points.iter().map(|&t| mean_gap(spec, t)).fold(0.0, f64::max) + 1.0;
    let mut fallback: Option<Vec<GapReport>> = None;
    let mut last_err = None;
    for _ in 0..MAX_WIDENINGS {
        match find_zeros(spec, t_lo - pad, t_hi + pad, step) {
            Ok(scan) if !scan.zeros.is_empty() => {
                let rows = rows_from_scan(spec, &scan, t_points)?;
                if scan.complete && nearest_is_certain(&rows, &scan) {
                    return rows.into_iter().map(|r| annotate_gap_report(r, spec)).collect();
                }
                fallback = Some(rows);
            }
            Ok(_) => {}
            Err(e @ (Error::ContourTooClose { .. } | Error::NonIntegerWinding(_))) => {
                log::warn!("{}: {e}; widening", spec.label());
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
        pad *= 2.0;
    }
    match fallback {
        Some(rows) => {
            log::warn!("{}: scan flagged incomplete", spec.label());
            rows.into_iter()
                .map(|mut r| {
                    r.complete = false;
                    annotate_gap_report(r, spec)
                })
                .collect()
        }
        None => Err(last_err.unwrap_or(Error::TooFewZeros(0))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: String,
    pub rows: usize,
    /// Smallest `|nearest_zero|` over the rows; at `T = 0` this is the lowest zero.
    pub min_lowest_zero: f64,
    pub max_lowest_zero: f64,
    pub max_consecutive_gap: Option<f64>,
    pub flagged: usize,
    pub inconsistent: usize,
    pub thm1_applicable: usize,
    pub thm2_applicable: usize,
}

/// Per-family aggregates, in order of first appearance.
pub fn summarize(rows: &[GapReport]) -> Vec<FamilySummary> {
    let mut out: Vec<FamilySummary> = Vec::new();
    for r in rows {
        let idx = match out.iter().position(|s| s.family == r.family) {
            Some(i) => i,
            None => {
                out.push(FamilySummary {
                    family: r.family.clone(),
                    rows: 0,
                    min_lowest_zero: f64::INFINITY,
                    max_lowest_zero: 0.0,
                    max_consecutive_gap: None,
                    flagged: 0,
                    inconsistent: 0,
                    thm1_applicable: 0,
                    thm2_applicable: 0,
                });
                out.len() - 1
            }
        };
        let s = &mut out[idx];
        s.rows += 1;
        s.min_lowest_zero = s.min_lowest_zero.min(r.nearest_zero.abs());
        s.max_lowest_zero = s.max_lowest_zero.max(r.nearest_zero.abs());
        if let Some(g) = r.consecutive_gap {
            s.max_consecutive_gap = Some(s.max_consecutive_gap.map_or(g, |m| m.max(g)));
        }
        s.flagged += usize::from(!r.complete);
        s.inconsistent += usize::from(!r.consistent);
        s.thm1_applicable += usize::from(r.thm1_applicable);
        s.thm2_applicable += usize::from(r.thm2_applicable);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub version: String,
    pub config: SweepConfig,
    pub rows: Vec<GapReport>,
    pub summary: Vec<FamilySummary>,
    pub suites: Vec<SuiteReport>,
}

/// Run a sweep; rows come out ordered by parameter, then by `T`.
pub fn run_scan(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let specs = sweep_specs(cfg)?;
    let t_points = cfg.t_points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let per_spec: Vec<Vec<GapReport>> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| scan_point(spec, &t_points, cfg.step))
            .collect::<Result<_>>()
    })?;
    let rows: Vec<GapReport> = per_spec.into_iter().flatten().collect();
    Ok(SweepReport {
        version: VERSION.to_string(),
        config: cfg.clone(),
        summary: summarize(&rows),
        rows,
        suites: Vec::new(),
    })
}

/// The fixed CSV columns.
pub const CSV_COLUMNS: [&str; 10] = [
    "family",
    "param",
    "T",
    "nearest_zero",
    "nearest_distance",
    "consecutive_gap",
    "conductor",
    "thm1_bound",
    "thm2_bound",
    "consistent",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[GapReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.family.clone(),
            r.param.clone(),
            r.t.to_string(),
            r.nearest_zero.to_string(),
            r.nearest_distance.to_string(),
            opt(r.consecutive_gap),
            r.conductor.to_string(),
            opt(r.thm1_bound),
            opt(r.thm2_bound),
            r.consistent.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(report: &SweepReport, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn emit_report(report: &SweepReport, format: OutputFormat, path: &Path) -> Result<()> {
    let out = BufWriter::new(File::create(path)?);
    match format {
        OutputFormat::Csv => write_csv(&report.rows, out),
        OutputFormat::Json => write_json(report, out),
    }
}

pub fn load_report(path: &Path) -> Result<SweepReport> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing_and_validation() {
        let map = parse_flat_config("family = dirichlet # sweep\nq = 3..10\n\nchar=quadratic\n").unwrap();
        let cfg = SweepConfig::from_pairs(map.iter().map(|(k, v)| (k.as_str(), v.as_str()))).unwrap();
        assert_eq!(cfg.family, FamilySelector::Dirichlet);
        assert_eq!((cfg.q_min, cfg.q_max), (3, 10));
        assert_eq!(cfg.chars, CharSelector::Quadratic);
        assert!(matches!(SweepConfig::from_pairs([("family", "dirichlet"), ("q", "10..3")]), Err(Error::Config(_))));
        assert!(matches!(SweepConfig::from_pairs([("step", "0")]), Err(Error::Config(_))));
        assert!(matches!(SweepConfig::from_pairs([("colour", "red")]), Err(Error::Config(_))));
        assert!(parse_flat_config("novalue").is_err());
        let cfg = SweepConfig::from_pairs([("t-max", "25"), ("t_spacing", "10")]).unwrap();
        assert_eq!(cfg.t_points(), vec![0.0, 10.0, 20.0]);
    }

    #[test]
    fn specs_for_selectors() {
        let cfg = SweepConfig::from_pairs([("family", "dirichlet"), ("q", "3..12"), ("char", "quadratic")]).unwrap();
        let labels: Vec<_> = sweep_specs(&cfg).unwrap().iter().map(|s| s.label()).collect();
        // D = -3, -4, 5, -7, 8, -8, -11, 12
        assert_eq!(labels.len(), 8, "{labels:?}");
        let cfg = SweepConfig::from_pairs([("family", "dedekind"), ("d", "-8..8")]).unwrap();
        assert_eq!(sweep_specs(&cfg).unwrap().len(), 6);
        let cfg = SweepConfig::from_pairs([("family", "dirichlet"), ("q", "1..2")]).unwrap();
        assert!(matches!(sweep_specs(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn csv_layout() {
        let cfg = SweepConfig::from_pairs([("family", "dirichlet"), ("q", "3..4")]).unwrap();
        let report = run_scan(&cfg).unwrap();
        assert_eq!(report.rows.len(), 2);
        let mut buf = Vec::new();
        write_csv(&report.rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        // bounds are inapplicable at this scale: empty cells
        assert!(text.lines().nth(1).unwrap().contains(",,,true"));
    }
}
