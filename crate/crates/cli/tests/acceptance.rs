//! Acceptance gate: every shipped criterion, run end to end at the default
//! configuration, one pass/fail line per criterion. Each `#[test]` covers
//! exactly one criterion so a regression names the guarantee it broke.

use qcd_cli::suite::{criteria, run_criterion, run_suite};
use qcd_cli::RunConfig;

/// Runs the criterion with the given id, prints its verdict line, and
/// fails the test with the full detail string if the criterion failed.
fn check(id: &str) {
    let all = criteria();
    let criterion = all
        .iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("no criterion with id {id}"));
    let outcome = run_criterion(criterion, &RunConfig::default());
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {} {} ({} ms): {}",
        outcome.id, outcome.title, outcome.millis, outcome.detail
    );
    assert!(
        outcome.passed,
        "{} failed: {} — {}",
        outcome.id, outcome.title, outcome.detail
    );
}

#[test]
fn c01_complexification_homomorphism() {
    check("C01");
}

#[test]
fn c02_pencil_factorization() {
    check("C02");
}

#[test]
fn c03_kernel_dimensions_across_truncations() {
    check("C03");
}

#[test]
fn c04_closed_form_vs_row_recurrence() {
    check("C04");
}

#[test]
fn c05_root_product_radius_estimates() {
    check("C05");
}

#[test]
fn c06_jet_derivative_identities() {
    check("C06");
}

#[test]
fn c07_rigidity_round_trip_and_sensitivity() {
    check("C07");
}

#[test]
fn c08_canonical_matrices_separate_the_twins() {
    check("C08");
}

#[test]
fn c09_twin_curvature_agreement() {
    check("C09");
}

#[test]
fn c10_equivalence_transfers_to_the_complexification() {
    check("C10");
}

#[test]
fn c11_scalar_phase_conjugation_identity() {
    check("C11");
}

#[test]
fn c12_full_suite_within_budget() {
    let report = run_suite(&RunConfig::default()).expect("suite must run at defaults");
    for outcome in &report.outcomes {
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {} {} ({} ms): {}",
            outcome.id, outcome.title, outcome.millis, outcome.detail
        );
    }
    assert_eq!(report.outcomes.len(), 12);
    assert!(
        report.all_passed,
        "suite reported a failing criterion: {:?}",
        report
            .outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| format!("{}: {}", o.id, o.detail))
            .collect::<Vec<_>>()
    );
    assert!(
        report.total_millis < 60_000,
        "suite took {} ms, budget is 60000 ms",
        report.total_millis
    );
}
