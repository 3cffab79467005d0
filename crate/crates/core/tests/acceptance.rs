//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use hyperweight::verify::{self, CheckReport, VerifyConfig};

fn run(check: fn(&VerifyConfig) -> CheckReport) {
    let report = check(&VerifyConfig::default());
    println!("{}", report.line());
    assert!(report.passed(), "{}", report.line());
}

#[test]
fn criterion_01_min_weight_construction() {
    run(verify::check_min_weight_construction);
}

#[test]
fn criterion_02_next_to_min_small_d() {
    run(verify::check_next_to_min_small_d);
}

#[test]
fn criterion_03_next_to_min_large_d() {
    run(verify::check_next_to_min_large_d);
}

#[test]
fn criterion_04_exhaustive_spectra() {
    run(verify::check_exhaustive_spectra);
}

#[test]
fn criterion_05_counting_formulas() {
    run(verify::check_counting_formulas);
}

#[test]
fn criterion_06_inequality_grid() {
    run(verify::check_inequality_grid);
}

#[test]
fn criterion_07_remainder_classification() {
    run(verify::check_remainder_classification);
}

#[test]
fn criterion_08_zero_iff_divisible() {
    run(verify::check_zero_iff_divisible);
}

#[test]
fn criterion_09_bound_soundness() {
    run(verify::check_bound_soundness);
}

#[test]
fn criterion_10_footprint_zero_count() {
    run(verify::check_footprint_zero_count);
}

#[test]
fn criterion_11_gap_sampling() {
    run(verify::check_gap_sampling);
}
