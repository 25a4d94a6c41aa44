use zerogaps::lfunc::{make_dirichlet, make_zeta, primitive_characters, quadratic_character, LFunctionSpec};
use zerogaps::zeroscan::{
    count_zeros, find_zeros, gap_at, hardy_z, max_consecutive_gap, rvm_main_term, winding_turns,
};

/// Ordinates computed independently with mpmath at 30 digits.
const ZETA_ZEROS: [f64; 10] = [
    14.134725141734693,
    21.022039638771556,
    25.01085758014569,
    30.424876125859512,
    32.93506158773919,
    37.58617815882567,
    40.9187190121475,
    43.327073280915,
    48.00515088116716,
    49.7738324776723,
];

fn chi(d: i64) -> LFunctionSpec {
    make_dirichlet(&quadratic_character(d).unwrap()).unwrap()
}

fn assert_refined(spec: &LFunctionSpec, gamma: f64) {
    let lo = hardy_z(spec, gamma - 1e-7).unwrap();
    let hi = hardy_z(spec, gamma + 1e-7).unwrap();
    assert!((lo < 0.0) != (hi < 0.0), "{} at {gamma}: Z = {lo}, {hi}", spec.label());
}

#[test]
fn zeta_ordinates_match_reference() {
    let scan = find_zeros(&make_zeta(), 0.0, 50.0, 0.05).unwrap();
    assert!(scan.complete);
    assert_eq!(scan.zeros.len(), ZETA_ZEROS.len());
    for (z, want) in scan.zeros.iter().zip(ZETA_ZEROS) {
        assert!((z.gamma - want).abs() < 1e-8, "{} vs {want}", z.gamma);
    }
}

#[test]
fn quadratic_character_lowest_zeros() {
    for (d, want) in [(-3, 8.039737155681467), (-4, 6.020948904697597), (5, 6.648453300708)] {
        let spec = chi(d);
        let scan = find_zeros(&spec, 0.0, 10.0, 0.02).unwrap();
        assert!(scan.complete);
        let lowest = scan.zeros.iter().map(|z| z.gamma).find(|g| *g > 0.0).unwrap();
        assert!((lowest - want).abs() < 1e-6, "D = {d}: {lowest} vs {want}");
    }
}

#[test]
fn zeta_scan_complete_to_one_thousand() {
    let zeta = make_zeta();
    let scan = find_zeros(&zeta, 0.0, 1000.0, 0.05).unwrap();
    assert!(scan.complete, "{} located, {} counted", scan.zeros.len(), scan.contour_count);
    assert_eq!(scan.zeros.len(), 649);
    for z in &scan.zeros {
        assert_refined(&zeta, z.gamma);
    }
    assert!(scan.zeros.windows(2).all(|w| w[0].gamma < w[1].gamma));
}

#[test]
fn zero_count_tracks_main_term() {
    let zeta = make_zeta();
    for k in 1..=20 {
        let t = 50.0 * k as f64;
        let n = count_zeros(&zeta, 0.0, t).unwrap() as f64;
        let main = rvm_main_term(&zeta, t).unwrap();
        assert!((n - main).abs() <= 5.0 * (t + 3.0).ln(), "T = {t}: {n} vs {main}");
    }
}

#[test]
fn winding_is_integral() {
    let zeta = make_zeta();
    for (lo, hi) in [(0.0, 10.0), (10.0, 100.0), (100.0, 137.3), (500.0, 600.0)] {
        let turns = winding_turns(&zeta, lo, hi).unwrap();
        let radians = turns * std::f64::consts::TAU;
        let nearest = (turns.round()) * std::f64::consts::TAU;
        assert!((radians - nearest).abs() < 0.01, "[{lo}, {hi}]: {turns} turns");
    }
}

fn assert_complete_on_symmetric_window(spec: &LFunctionSpec) {
    let scan = find_zeros(spec, -50.0, 50.0, 0.05).unwrap();
    assert!(scan.complete, "{}: {} of {}", spec.label(), scan.zeros.len(), scan.contour_count);
    for z in &scan.zeros {
        assert_refined(spec, z.gamma);
    }
}

#[test]
fn sampled_characters_complete_on_window() {
    for q in [3, 4, 5, 7, 8, 11, 13, 24, 37, 60, 97] {
        for chi in primitive_characters(q).unwrap().iter().step_by(5) {
            assert_complete_on_symmetric_window(&make_dirichlet(chi).unwrap());
        }
    }
}

#[test]
#[ignore = "every primitive character up to modulus 100; several minutes"]
fn all_characters_complete_on_window() {
    for q in 3..=100 {
        for chi in primitive_characters(q).unwrap() {
            assert_complete_on_symmetric_window(&make_dirichlet(&chi).unwrap());
        }
    }
}

#[test]
fn count_agrees_with_sign_changes_for_odd_character() {
    let spec = chi(-3);
    let scan = find_zeros(&spec, -10.0, 10.0, 0.02).unwrap();
    assert_eq!(count_zeros(&spec, -10.0, 10.0).unwrap(), scan.zeros.len());
    assert_eq!(scan.zeros.len(), 2);
}

#[test]
fn gaps_from_scans() {
    let zeta = make_zeta();
    let scan = find_zeros(&zeta, 0.0, 30.0, 0.05).unwrap();
    let report = gap_at(&zeta, &scan, 20.0).unwrap();
    assert!((report.nearest_distance - (ZETA_ZEROS[1] - 20.0)).abs() < 1e-8);
    assert!((report.consecutive_gap.unwrap() - (ZETA_ZEROS[1] - ZETA_ZEROS[0])).abs() < 1e-8);

    let first = find_zeros(&zeta, 14.0, 100.0, 0.05).unwrap();
    assert!((max_consecutive_gap(&first).unwrap() - 6.887256).abs() < 1e-4);
    let later = find_zeros(&zeta, 100.0, 200.0, 0.05).unwrap();
    assert!(max_consecutive_gap(&later).unwrap() < 6.887);

    let spec = chi(5);
    let sym = find_zeros(&spec, -30.0, 30.0, 0.05).unwrap();
    for t in [3.0, 7.5, 12.0] {
        let plus = gap_at(&spec, &sym, t).unwrap().nearest_distance;
        let minus = gap_at(&spec, &sym, -t).unwrap().nearest_distance;
        assert!((plus - minus).abs() < 1e-8, "T = {t}: {plus} vs {minus}");
    }
}
