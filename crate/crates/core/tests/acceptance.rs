//! Acceptance suite: every verification target at its pinned tolerance,
//! one pass/fail line per check (run with `--nocapture` to see them).
//!
//! 1. group axioms and realization faithfulness for both flavors
//! 2. contraction convergence, temporal and spatial, fitted order 2 ± 0.1
//! 3. commutator tables vs realizations, Jacobi, centrality
//! 4. Galilei projective phases: cocycle on 200 pairs, commutator word
//! 5. dual UIR: exact homomorphism, H = E, spin Casimir, trivial evolution
//! 6. little group block-diagonality, 200 random points
//! 7. electrostatics pipeline: spectral Gauss residual, statics, radial profile
//! 8. frame covariance at 64³ (≤ 10×) and 128³ (≤ 3×)
//! 9. gauge-invariance convergence order ≥ 1.9
//! 10. manufactured magnetic-limit residual and continuity orders ≥ 1.9

use galdual::contraction::ContractionMode;
use galdual::grid::DerivScheme;
use galdual::report::Report;
use galdual::verify::{
    print_report, verify_algebra, verify_contraction, verify_covariance, verify_electrostatics,
    verify_gauge, verify_groups, verify_magnetic_mms, verify_reps, ElectrostaticsSetup,
};

fn assert_all(label: &str, report: &Report) {
    print_report(report);
    let failed: Vec<&str> =
        report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "{label}: failing checks: {failed:?}");
}

#[test]
fn criterion_1_group_axioms() {
    assert_all("criterion 1", &verify_groups(7, 1000));
}

#[test]
fn criterion_2_contraction_convergence() {
    assert_all(
        "criterion 2 temporal",
        &verify_contraction(ContractionMode::Temporal, 0.5, 0.3, 0.1, 1.0),
    );
    assert_all(
        "criterion 2 spatial",
        &verify_contraction(ContractionMode::Spatial, 0.5, 0.3, 0.1, 1.0),
    );
    // superluminal parameters are legal once contracted
    assert_all(
        "criterion 2 superluminal",
        &verify_contraction(ContractionMode::Temporal, 2.0, 1.0, -0.5, 1.0),
    );
}

#[test]
fn criterion_3_commutator_tables() {
    assert_all("criterion 3", &verify_algebra(11, 500));
}

#[test]
fn criteria_4_5_6_representations() {
    assert_all("criteria 4-6", &verify_reps(13, 200, 64));
}

#[test]
fn criterion_7_electric_limit_statics() {
    assert_all("criterion 7", &verify_electrostatics(&ElectrostaticsSetup::default()));
}

#[test]
fn criterion_8_covariance_64() {
    assert_all(
        "criterion 8 (64³)",
        &verify_covariance(17, 64, 20, galdual::tolerances::COVARIANCE_INFLATION_64, DerivScheme::Spectral),
    );
}

#[test]
fn criterion_8_covariance_128() {
    assert_all(
        "criterion 8 (128³)",
        &verify_covariance(17, 128, 20, galdual::tolerances::COVARIANCE_INFLATION_128, DerivScheme::Fd4),
    );
}

#[test]
fn criterion_9_gauge_invariance() {
    assert_all("criterion 9", &verify_gauge(19));
}

#[test]
fn criterion_10_magnetic_limit_mms() {
    assert_all("criterion 10", &verify_magnetic_mms());
}
