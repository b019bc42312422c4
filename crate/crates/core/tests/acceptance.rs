//! Acceptance criteria 1-11, one test each, at their stated tolerances.
//!
//! Every test writes a single PASS/FAIL line to stderr, outside the capture.

use std::io::Write;

use fracfloquet::cli::verify::{criterion, Criterion};
use fracfloquet::cli::VerifyOptions;

/// Runs the criterion, checks that its tolerances match `pinned`, prints its line.
fn run(id: u8, pinned: &[(&str, f64)]) -> Criterion {
    let c = criterion(id, VerifyOptions::default());
    let _ = writeln!(std::io::stderr(), "{}", c.line());
    for (name, tol) in pinned {
        let check = c.checks.iter().find(|k| k.name == *name).unwrap_or_else(|| panic!("criterion {id} has no check {name}"));
        assert_eq!(check.tolerance, *tol, "criterion {id} check {name}");
    }
    c
}

fn assert_passed(c: &Criterion) {
    for k in c.checks.iter().filter(|k| !k.passed) {
        eprintln!("  failing {}: {} {}", k.name, k.value, k.detail.as_deref().unwrap_or(""));
    }
    assert!(c.passed(), "{}", c.line());
}

#[test]
fn criterion_01_mittag_leffler_reductions() {
    let c = run(1, &[("exp_abs", 1e-10), ("cos_abs", 1e-10), ("sinc_abs", 1e-10)]);
    assert_passed(&c);
}

#[test]
fn criterion_02_caputo_eigenfunction_order() {
    let c = run(2, &[("min_order", 1.2)]);
    assert_passed(&c);
}

#[test]
fn criterion_03_classical_reduction() {
    let c = run(3, &[("max_abs", 1e-9), ("runtime_s", 5.0)]);
    assert_passed(&c);
}

#[test]
fn criterion_04_fractional_adams_cross_validation() {
    let c = run(4, &[("deviation_n64", 1e-3), ("max_ratio_on_doubling", 1.0), ("runtime_s", 120.0)]);
    assert_passed(&c);
}

#[test]
fn criterion_05_toy_coefficient_identities() {
    let c = run(5, &[("lattice_residual", 1e-10), ("bessel_recurrence", 1e-12)]);
    assert_passed(&c);
}

#[test]
fn criterion_06_caputo_of_exponential() {
    let c = run(6, &[("max_deviation", 1e-3)]);
    assert_passed(&c);
}

#[test]
fn criterion_07_riesz_periodicity() {
    let c = run(7, &[("off_mode_leakage", 1e-8), ("multiplier_rel", 1e-6)]);
    assert_passed(&c);
}

#[test]
fn criterion_08_subordination_reconstruction() {
    let c = run(8, &[("max_rel", 1e-2), ("normalisation", 1e-3), ("runtime_s", 60.0)]);
    assert_passed(&c);
}

#[test]
fn criterion_09_subordinated_vs_direct() {
    let c = run(9, &[("rel_difference", 2e-2)]);
    assert_passed(&c);
}

#[test]
fn criterion_10_spatial_model() {
    let c = run(10, &[("eigen_residual", 1e-8), ("ftse_residual", 1e-2), ("small_vs_dense", 1e-10)]);
    assert_passed(&c);
}

#[test]
fn criterion_11_fde_self_checks() {
    let c = run(11, &[("alpha1_norm_drift", 1e-8), ("order_offset", 0.2), ("time_independent", 1e-4)]);
    assert_passed(&c);
}
