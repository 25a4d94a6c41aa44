//! `zerogaps`: zero scans, gap reports, bound formulas and verification suites.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zerogaps::gapbounds::{classical_bounds, thm1_bound, thm2_bound, ClassicalKind, LogScale};
use zerogaps::harness::{
    run_scan, verify_exit_code, write_csv, write_json, FamilySelector, OutputFormat, SweepConfig,
    EXIT_FAILURE, EXIT_USAGE,
};
use zerogaps::lfunc::{
    analytic_conductor, analytic_conductor_pi_normalized, make_dedekind_quadratic, make_dirichlet,
    make_zeta, primitive_characters, quadratic_character, LFunctionSpec,
};
use zerogaps::paperchecks::Faults;
use zerogaps::zeroscan::find_zeros;
use zerogaps::{Error, Result};

#[derive(Parser)]
#[command(name = "zerogaps", version, about = "Zero gaps of L-functions and their explicit bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate critical-line zeros of one L-function in a height window.
    Zeros(ZerosArgs),
    /// Sweep L-functions and report nearest zeros, gaps and bounds.
    Gaps(SweepArgs),
    /// Evaluate a gap-bound formula.
    Bound(BoundArgs),
    /// Analytic conductor of one L-function at height T.
    Conductor(ConductorArgs),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Sweep plus verification suites in one JSON document.
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// zeta, dirichlet or dedekind.
    #[arg(long, default_value = "zeta")]
    family: String,
    /// Modulus of the Dirichlet character.
    #[arg(long)]
    q: Option<u64>,
    /// Index among the primitive characters mod q.
    #[arg(long = "char", default_value_t = 0)]
    char_index: usize,
    /// Fundamental discriminant (Dedekind, or the quadratic Dirichlet character).
    #[arg(long = "D", alias = "d", allow_hyphen_values = true)]
    discriminant: Option<i64>,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long = "t-min", allow_hyphen_values = true, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long = "t-max", allow_hyphen_values = true, default_value_t = 100.0)]
    t_max: f64,
    #[arg(long, default_value_t = zerogaps::zeroscan::DEFAULT_STEP)]
    step: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args, Clone, Default)]
struct SweepArgs {
    /// Flat key = value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Modulus range, `a..b` or a single value.
    #[arg(long)]
    q: Option<String>,
    /// Discriminant range, `a..b` or a single value.
    #[arg(long = "D", alias = "d", allow_hyphen_values = true)]
    discriminant: Option<String>,
    /// all, quadratic or an index.
    #[arg(long = "char")]
    chars: Option<String>,
    #[arg(long = "t-min", allow_hyphen_values = true)]
    t_min: Option<String>,
    #[arg(long = "t-max", allow_hyphen_values = true)]
    t_max: Option<String>,
    #[arg(long = "t-spacing")]
    t_spacing: Option<String>,
    #[arg(long)]
    step: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct BoundArgs {
    /// thm1, thm2, hall-hayman, siegel or littlewood.
    kind: String,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long = "logC")]
    log_c: Option<f64>,
    #[arg(long = "loglogC")]
    loglog_c: Option<f64>,
    #[arg(long = "logloglogC", allow_hyphen_values = true)]
    logloglog_c: Option<f64>,
}

#[derive(Args)]
struct ConductorArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long = "T", alias = "t", allow_hyphen_values = true, default_value_t = 0.0)]
    t: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// hyperbolic, paper, specfun, lfunc or all; repeat or comma-separate.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Perturb ζ(σ) in the appendix checks by this amount.
    #[arg(long = "inject-zeta-offset", hide = true, allow_hyphen_values = true)]
    inject_zeta_offset: Option<f64>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long = "suite")]
    suites: Vec<String>,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut out = open_output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn build_spec(args: &SpecArgs) -> Result<LFunctionSpec> {
    match args.family.parse::<FamilySelector>()? {
        FamilySelector::Zeta => Ok(make_zeta()),
        FamilySelector::Dirichlet => match (args.discriminant, args.q) {
            (Some(d), _) => make_dirichlet(&quadratic_character(d)?),
            (None, Some(q)) => {
                let chars = primitive_characters(q)?;
                let chi = chars.get(args.char_index).ok_or_else(|| {
                    Error::Usage(format!("modulus {q} has {} primitive characters", chars.len()))
                })?;
                make_dirichlet(chi)
            }
            (None, None) => Err(Error::Usage("dirichlet needs --q or --D".into())),
        },
        FamilySelector::Dedekind => {
            let d = args.discriminant.ok_or_else(|| Error::Usage("dedekind needs --D".into()))?;
            make_dedekind_quadratic(d)
        }
    }
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let mut cfg = match &args.config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    let flags = [
        ("family", &args.family),
        ("q", &args.q),
        ("d", &args.discriminant),
        ("char", &args.chars),
        ("t-min", &args.t_min),
        ("t-max", &args.t_max),
        ("t-spacing", &args.t_spacing),
        ("step", &args.step),
        ("tol", &args.tol),
        ("workers", &args.workers),
        ("out", &args.out),
        ("format", &args.format),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.apply(key, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_zeros(args: &ZerosArgs) -> Result<i32> {
    let spec = build_spec(&args.spec)?;
    let format: OutputFormat = args.format.parse()?;
    let scan = find_zeros(&spec, args.t_min, args.t_max, args.step)?;
    match format {
        OutputFormat::Csv => scan.write_csv(open_output(args.out.as_deref())?)?,
        OutputFormat::Json => print_json(&scan, args.out.as_deref())?,
    }
    if !scan.complete {
        eprintln!(
            "warning: {} sign changes but contour count {}",
            scan.zeros.len(),
            scan.contour_count
        );
    }
    Ok(0)
}

fn cmd_gaps(args: &SweepArgs) -> Result<i32> {
    let cfg = sweep_config(args)?;
    let report = run_scan(&cfg)?;
    let out = open_output(cfg.out.as_deref())?;
    match cfg.format {
        OutputFormat::Csv => write_csv(&report.rows, out)?,
        OutputFormat::Json => write_json(&report, out)?,
    }
    let inconsistent: usize = report.summary.iter().map(|s| s.inconsistent).sum();
    Ok(if inconsistent > 0 { EXIT_FAILURE } else { 0 })
}

fn cmd_bound(args: &BoundArgs) -> Result<i32> {
    let given = [args.c, args.log_c, args.loglog_c, args.logloglog_c];
    let scale = match given {
        [Some(c), None, None, None] => LogScale::from_c(c)?,
        [None, Some(l), None, None] => LogScale::from_log_c(l)?,
        [None, None, Some(l), None] => LogScale::from_loglog_c(l)?,
        [None, None, None, Some(l)] => LogScale::from_logloglog_c(l)?,
        _ => return Err(Error::Usage("give exactly one of --C, --logC, --loglogC, --logloglogC".into())),
    };
    let result = match args.kind.as_str() {
        "thm1" => thm1_bound(args.m, args.theta, scale)?,
        "thm2" => thm2_bound(args.m, args.theta, scale)?,
        other => classical_bounds(other.parse::<ClassicalKind>()?, scale)?,
    };
    let json = serde_json::json!({
        "value": result.value,
        "denominator": result.denominator.is_finite().then_some(result.denominator),
        "note": result.note,
        "edge_regime": result.edge_regime,
    });
    print_json(&json, None)?;
    Ok(0)
}

fn cmd_conductor(args: &ConductorArgs) -> Result<i32> {
    let spec = build_spec(&args.spec)?;
    let json = serde_json::json!({
        "label": spec.label(),
        "T": args.t,
        "conductor": analytic_conductor(&spec, args.t),
        "conductor_pi_normalized": analytic_conductor_pi_normalized(&spec, args.t),
        "spec": spec.record(),
    });
    print_json(&json, None)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let faults = Faults { zeta_offset: args.inject_zeta_offset.unwrap_or(0.0) };
    let (code, report) = verify_exit_code(&args.suites, &faults);
    let report = report?;
    print_json(&report, args.out.as_deref())?;
    for suite in &report.suites {
        eprintln!(
            "{:<11} {}  worst margin {:.3e}",
            suite.suite,
            if suite.pass { "PASS" } else { "FAIL" },
            suite.worst_margin
        );
    }
    for check in report.failing_checks() {
        eprintln!("failed: {} ({} witnesses)", check.name, check.witnesses.len());
        for w in &check.witnesses {
            eprintln!("  {}: lhs={} rhs={} margin={}", w.input, w.lhs, w.rhs, w.margin);
        }
    }
    Ok(code)
}

fn cmd_report(args: &ReportArgs) -> Result<i32> {
    let cfg = sweep_config(&args.sweep)?;
    let mut report = run_scan(&cfg)?;
    let mut code = 0;
    if !args.suites.is_empty() {
        let (c, verify) = verify_exit_code(&args.suites, &Faults::default());
        report.suites = verify?.suites;
        code = c;
    }
    write_json(&report, open_output(cfg.out.as_deref())?)?;
    Ok(code)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Config(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Zeros(a) => cmd_zeros(a),
        Command::Gaps(a) => cmd_gaps(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Conductor(a) => cmd_conductor(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
