//! Acceptance run: each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerogaps::gapbounds::{classical_bounds, thm1_bound, thm2_bound, ClassicalKind, LogScale};
use zerogaps::harness::{
    load_report, run_scan, run_verify, verify_exit_code, write_csv, write_json, CharSelector,
    FamilySelector, Suite, SweepConfig, SweepReport, EXIT_FAILURE, EXIT_OK, EXIT_USAGE,
};
use zerogaps::hypgeo::{
    borel_family, lemma_borel_outcome, lemma_rademacher_outcome, lemma_siegel_outcome,
    rademacher_family, siegel_family, siegel_sinh_ratio, strip_distance,
};
use zerogaps::lfunc::{
    functional_equation_residual, make_dedekind_quadratic, make_dirichlet, make_zeta,
    primitive_characters, quadratic_character,
};
use zerogaps::paperchecks::{
    fractional_integral_from_zeta, fractional_integral_quadrature, neg_log_derivative_zeta, Faults,
};
use zerogaps::specfun::solve_modulus_for_ratio;
use zerogaps::zeroscan::{count_zeros, find_zeros, rvm_main_term};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_zero_location() -> Outcome {
    let start = Instant::now();
    let scan = find_zeros(&make_zeta(), 0.0, 100.0, 0.05).map_err(e2s)?;
    let elapsed = start.elapsed();
    let want = [14.134725, 21.022040, 25.010858];
    for (z, w) in scan.zeros.iter().zip(want) {
        ensure((z.gamma - w).abs() <= 1e-5, format!("ordinate {} vs {w}", z.gamma))?;
    }
    ensure(scan.zeros.len() == 29 && scan.contour_count == 29 && scan.complete,
        format!("N(100): {} located, contour {}", scan.zeros.len(), scan.contour_count))?;
    ensure(elapsed < Duration::from_secs(30), format!("runtime {elapsed:?}"))?;
    Ok(format!("first ordinates {:.6} {:.6} {:.6}, N(100)=29, {:.2?}",
        scan.zeros[0].gamma, scan.zeros[1].gamma, scan.zeros[2].gamma, elapsed))
}

fn c2_rvm_envelope() -> Outcome {
    let zeta = make_zeta();
    let mut worst: f64 = 0.0;
    for t in [50.0, 100.0, 200.0, 500.0, 1000.0] {
        let n = count_zeros(&zeta, 0.0, t).map_err(e2s)? as f64;
        let main = rvm_main_term(&zeta, t).map_err(e2s)?;
        let ratio = (n - main).abs() / (5.0 * (t + 3.0).ln());
        ensure(ratio <= 1.0, format!("T={t}: N={n}, main term {main}"))?;
        worst = worst.max(ratio);
    }
    Ok(format!("largest |N - main| / (5 log(T+3)) = {worst:.3}"))
}

fn c3_functional_equation() -> Outcome {
    let mut specs = vec![make_zeta()];
    for q in [3, 4, 5, 7, 8, 11] {
        for chi in primitive_characters(q).map_err(e2s)? {
            specs.push(make_dirichlet(&chi).map_err(e2s)?);
        }
    }
    for d in [5, -3, -4] {
        specs.push(make_dedekind_quadratic(d).map_err(e2s)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for spec in &specs {
        for _ in 0..1000 {
            let s = Complex64::new(rng.random_range(-0.5..1.5), rng.random_range(0.0..50.0));
            let r = functional_equation_residual(spec, s).map_err(e2s)?;
            ensure(r < 1e-8, format!("{} at {s}: residual {r}", spec.label()))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("{} specs x 1000 points, max residual {worst:.2e}", specs.len()))
}

static DIRICHLET_SWEEP: OnceLock<Result<(SweepReport, Duration), String>> = OnceLock::new();

fn dirichlet_sweep() -> Result<&'static (SweepReport, Duration), String> {
    DIRICHLET_SWEEP
        .get_or_init(|| {
            let cfg = SweepConfig {
                family: FamilySelector::Dirichlet,
                q_min: 3,
                q_max: 100,
                chars: CharSelector::All,
                ..SweepConfig::default()
            };
            let start = Instant::now();
            run_scan(&cfg).map(|r| (r, start.elapsed())).map_err(e2s)
        })
        .as_ref()
        .map_err(|e| e.clone())
}

fn c4_lowest_zero_table() -> Outcome {
    let (report, elapsed) = dirichlet_sweep()?;
    let expected: usize = (3..=100).map(|q| primitive_characters(q).unwrap().len()).sum();
    ensure(report.rows.len() == expected, format!("{} rows, expected {expected}", report.rows.len()))?;
    let flagged = report.rows.iter().filter(|r| !r.complete).count();
    ensure(flagged == 0, format!("{flagged} incomplete scans"))?;
    let chi3 = quadratic_character(-3).map_err(e2s)?.label();
    let row = report.rows.iter().find(|r| r.param == chi3).ok_or("no row for chi mod 3")?;
    let lowest = row.nearest_zero.abs();
    ensure((lowest - 8.0397).abs() <= 1e-3, format!("chi mod 3 lowest zero {lowest}"))?;
    ensure(*elapsed < Duration::from_secs(300), format!("runtime {elapsed:?}"))?;
    Ok(format!("{} characters complete, chi mod 3 lowest zero {lowest:.6}, {elapsed:.1?}", report.rows.len()))
}

fn c5_bound_formulas() -> Outcome {
    let v1 = thm1_bound(1, 0.0, LogScale::from_loglog_c(1e4).map_err(e2s)?).map_err(e2s)?.value.ok_or("thm1 inapplicable")?;
    ensure((v1 - 0.2163).abs() <= 1e-3, format!("thm1 {v1}"))?;
    let mut worst2: f64 = 0.0;
    for m in [1u32, 2, 3, 10] {
        let scale = LogScale::from_log_c(m as f64 * 3f64.exp().exp()).map_err(e2s)?;
        let v2 = thm2_bound(m, 0.0, scale).map_err(e2s)?.value.ok_or("thm2 inapplicable")?;
        worst2 = worst2.max((v2 - PI / 6.0).abs());
    }
    ensure(worst2 <= 1e-12, format!("thm2 deviates by {worst2}"))?;
    let hh = classical_bounds(ClassicalKind::HallHayman, LogScale::from_logloglog_c(40.0).map_err(e2s)?)
        .map_err(e2s)?.value.ok_or("hall-hayman inapplicable")?;
    ensure((hh - 0.1173).abs() <= 1e-3, format!("hall-hayman {hh}"))?;
    let mut pairs = 0;
    for m in [1u32, 2, 3, 5, 10] {
        for theta in [0.0, 0.5, 1.0] {
            let mut prev: [Option<f64>; 2] = [None, None];
            for i in 0..1000 {
                let ll = 10f64.powf(0.2 + 7.8 * i as f64 / 999.0);
                let scale = LogScale::from_loglog_c(ll).map_err(e2s)?;
                let vals = [
                    thm1_bound(m, theta, scale).ok().and_then(|b| b.value),
                    thm2_bound(m, theta, scale).ok().and_then(|b| b.value),
                ];
                for k in 0..2 {
                    if let (Some(p), Some(v)) = (prev[k], vals[k]) {
                        ensure(v < p, format!("bound {k} not decreasing at m={m} theta={theta} loglogC={ll}"))?;
                        pairs += 1;
                    }
                }
                prev = vals;
            }
        }
    }
    Ok(format!("thm1 {v1:.4}, thm2 |err| {worst2:.1e}, hall-hayman {hh:.4}, {pairs} monotone pairs"))
}

fn default_sweep_rows() -> Result<Vec<zerogaps::zeroscan::GapReport>, String> {
    let mut rows = dirichlet_sweep()?.0.rows.clone();
    let zeta = SweepConfig { family: FamilySelector::Zeta, t_min: 0.0, t_max: 1000.0, ..SweepConfig::default() };
    rows.extend(run_scan(&zeta).map_err(e2s)?.rows);
    let ded = SweepConfig { family: FamilySelector::Dedekind, ..SweepConfig::default() };
    rows.extend(run_scan(&ded).map_err(e2s)?.rows);
    Ok(rows)
}

fn c6_consistency_gate() -> Outcome {
    let rows = default_sweep_rows()?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.consistent).collect();
    ensure(bad.is_empty(), format!("{} falsification events, first {:?}", bad.len(), bad.first()))?;
    let flagged = rows.iter().filter(|r| !r.complete).count();
    ensure(flagged * 100 < rows.len(), format!("{flagged} flagged rows"))?;
    let applicable = rows.iter().filter(|r| r.thm1_applicable || r.thm2_applicable).count();
    Ok(format!("{} rows, 0 falsifications, {applicable} with an applicable bound, {flagged} flagged", rows.len()))
}

fn suite_pass(suite: Suite) -> Result<zerogaps::harness::SuiteReport, String> {
    let report = run_verify(&[suite]).map_err(e2s)?;
    let s = report.suites.into_iter().next().ok_or("no suite report")?;
    if let Some(c) = s.checks.iter().find(|c| !c.pass) {
        return Err(format!("{} failed: {:?}", c.name, c.witnesses.first()));
    }
    Ok(s)
}

fn c7_hyperbolic() -> Outcome {
    let s = suite_pass(Suite::Hyperbolic)?;
    for name in ["strip_distance_lower_bound", "rectangle_distance_bound", "conformal_round_trip"] {
        let c = s.checks.iter().find(|c| c.name == name).ok_or(format!("missing {name}"))?;
        ensure(c.worst_margin >= -1e-9, format!("{name} margin {}", c.worst_margin))?;
    }
    let lemma24 = s.checks.iter().find(|c| c.name == "strip_distance_lower_bound").unwrap();
    ensure(lemma24.samples == 10_000, "strip check sample count")?;
    let (k, _) = solve_modulus_for_ratio(1.0).map_err(e2s)?;
    ensure((k - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-9, format!("k = {k}"))?;
    let d = strip_distance(Complex64::new(0.0, 7.0), Complex64::new(1.0, 7.0), 7.0, 1.0).map_err(e2s)?;
    ensure((d - 1.0).abs() <= 1e-12, format!("center-line distance {d}"))?;
    Ok(format!("{} checks pass, strip margin {:.2e}, k = {k:.12}", s.checks.len(), lemma24.worst_margin))
}

fn c8_instance_families() -> Outcome {
    let borel = borel_family();
    let siegel = siegel_family();
    let rad = rademacher_family();
    ensure(borel.len() >= 10 && siegel.len() >= 10 && rad.len() >= 10, "family sizes")?;
    for inst in &borel {
        let o = lemma_borel_outcome(&inst.f, inst.r1, inst.r2, 10_000).map_err(e2s)?;
        ensure(o.holds, format!("borel {inst:?}"))?;
    }
    for inst in &siegel {
        ensure(lemma_siegel_outcome(inst, 10_000).map_err(e2s)?.holds, format!("siegel {inst:?}"))?;
    }
    for inst in &rad {
        ensure(lemma_rademacher_outcome(inst, 10_000).map_err(e2s)?.holds, format!("rademacher {inst:?}"))?;
    }
    let ratio = siegel_sinh_ratio(2.0, 0.5);
    ensure((ratio - 0.0431333).abs() <= 1e-6, format!("sinh ratio {ratio}"))?;
    Ok(format!("{}/{}/{} instances hold, sinh ratio {ratio:.7}", borel.len(), siegel.len(), rad.len()))
}

fn c9_paper_inequalities() -> Outcome {
    let s = suite_pass(Suite::Paper)?;
    let strip: Vec<_> = s.checks.iter().filter(|c| c.name == "strip_bound").collect();
    ensure(strip.len() >= 5 && strip.iter().all(|c| c.samples == 500), "strip grids")?;
    let logs: Vec<_> = s.checks.iter().filter(|c| c.name == "log_ratio_bound").collect();
    ensure(logs.len() >= 5 && logs.iter().all(|c| c.samples == 1000), "log-ratio trials")?;
    for name in ["zeta_log_derivative", "fractional_part_integral", "zeta_sandwich", "fractional_part_series_step"] {
        let c = s.checks.iter().find(|c| c.name == name).ok_or(format!("missing {name}"))?;
        ensure(c.worst_margin > 0.0, format!("{name} margin {}", c.worst_margin))?;
    }
    let f = Faults::default();
    let ld = neg_log_derivative_zeta(2.0, &f).map_err(e2s)?;
    ensure((ld - 0.569961).abs() <= 1e-5, format!("-zeta'/zeta(2) = {ld}"))?;
    let iq = fractional_integral_quadrature(2.0).map_err(e2s)?;
    let iz = fractional_integral_from_zeta(2.0, &f).map_err(e2s)?;
    ensure((iq - 0.1775329).abs() <= 1e-6 && (iq - iz).abs() < 1e-8, format!("I(2): {iq} vs {iz}"))?;
    Ok(format!("{} checks pass, -zeta'/zeta(2) = {ld:.6}, I(2) = {iq:.7}, routes differ by {:.1e}", s.checks.len(), (iq - iz).abs()))
}

fn c10_determinism_and_io() -> Outcome {
    let cfg = SweepConfig {
        family: FamilySelector::Dirichlet,
        q_min: 3,
        q_max: 25,
        t_min: 0.0,
        t_max: 20.0,
        ..SweepConfig::default()
    };
    let csv_of = |r: &SweepReport| {
        let mut buf = Vec::new();
        write_csv(&r.rows, &mut buf).map(|_| buf).map_err(e2s)
    };
    let a = run_scan(&cfg).map_err(e2s)?;
    let b = run_scan(&cfg).map_err(e2s)?;
    ensure(csv_of(&a)? == csv_of(&b)?, "CSV differs between runs")?;

    let dir = tempfile::tempdir().map_err(e2s)?;
    let path = dir.path().join("report.json");
    write_json(&a, std::fs::File::create(&path).map_err(e2s)?).map_err(e2s)?;
    let loaded = load_report(&path).map_err(e2s)?;
    ensure(loaded == a, "JSON round trip changed the report")?;
    for (x, y) in a.rows.iter().zip(&loaded.rows) {
        ensure(x.nearest_zero.to_bits() == y.nearest_zero.to_bits() && x.conductor.to_bits() == y.conductor.to_bits(), "float bits")?;
    }
    let text = String::from_utf8(csv_of(&a)?).map_err(e2s)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    for (rec, row) in reader.records().zip(&a.rows) {
        let rec = rec.map_err(e2s)?;
        let gamma: f64 = rec[3].parse().map_err(e2s)?;
        ensure(gamma.to_bits() == row.nearest_zero.to_bits(), "CSV float bits")?;
        ensure(rec[7].is_empty() == row.thm1_bound.is_none(), "empty cell for missing bound")?;
    }

    let (clean, _) = verify_exit_code(&["paper"], &Faults::default());
    let (faulty, report) = verify_exit_code(&["paper"], &Faults { zeta_offset: 1e-3 });
    let witnesses = report.map_err(e2s)?.failing_checks().map(|c| c.witnesses.len()).sum::<usize>();
    let (usage, _) = verify_exit_code(&["unknown"], &Faults::default());
    ensure(clean == EXIT_OK && faulty == EXIT_FAILURE && usage == EXIT_USAGE,
        format!("exit codes {clean}/{faulty}/{usage}"))?;
    ensure(witnesses > 0, "fault produced no witnesses")?;
    Ok(format!("{} rows byte-identical, JSON/CSV exact, exit codes 0/1/2, {witnesses} fault witnesses", a.rows.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "zero location", c1_zero_location),
        (2, "zero-count envelope", c2_rvm_envelope),
        (3, "functional equation", c3_functional_equation),
        (4, "lowest-zero table", c4_lowest_zero_table),
        (5, "bound formulas", c5_bound_formulas),
        (6, "consistency gate", c6_consistency_gate),
        (7, "hyperbolic suite", c7_hyperbolic),
        (8, "lemma instance families", c8_instance_families),
        (9, "paper inequality suite", c9_paper_inequalities),
        (10, "determinism and I/O", c10_determinism_and_io),
    ];
    let mut failures = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("acceptance {id:>2} PASS  {title}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failures += 1;
                println!("acceptance {id:>2} FAIL  {title}: {why} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
