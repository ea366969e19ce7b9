//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its stated runtime budget.

use std::process::Command;
use std::time::{Duration, Instant};

use rank_codes::selfcheck::{run_criterion, DEFAULT_SEED};

fn run(id: u32, limit: Duration) {
    let start = Instant::now();
    let report = run_criterion(id, DEFAULT_SEED);
    let elapsed = start.elapsed();
    println!(
        "{}: criterion {} ({}) — {} [{:.2?}]",
        if report.passed { "PASS" } else { "FAIL" },
        report.id,
        report.name,
        report.detail,
        elapsed
    );
    assert!(
        elapsed < limit,
        "criterion {id} took {elapsed:.2?}, limit {limit:.2?}"
    );
    assert!(report.passed, "criterion {id}: {}", report.detail);
}

#[test]
fn criterion_01_counting_identity() {
    run(1, Duration::from_secs(10));
}

#[test]
fn criterion_02_mrd_distribution_vs_enumeration() {
    run(2, Duration::from_secs(10));
}

#[test]
fn criterion_03_equal_rank_slice_exactness() {
    run(3, Duration::from_secs(60));
}

#[test]
fn criterion_04_line_code_exactness() {
    run(4, Duration::from_secs(10));
}

#[test]
fn criterion_05_subspace_code_fixture() {
    run(5, Duration::from_secs(30));
}

#[test]
fn criterion_06_sandwich_soundness() {
    run(6, Duration::from_secs(60));
}

#[test]
fn criterion_07_fiber_sizes() {
    run(7, Duration::from_secs(1));
}

#[test]
fn criterion_08_distance_boosting_construction() {
    run(8, Duration::from_secs(10));
}

#[test]
fn criterion_09_isometry_constructions() {
    run(9, Duration::from_secs(30));
}

#[test]
fn criterion_10_executable_automorphisms() {
    run(10, Duration::from_secs(10));
}

#[test]
fn criterion_11_basis_independence() {
    run(11, Duration::from_secs(30));
}

#[test]
fn criterion_12_asymptotic_rates() {
    run(12, Duration::from_secs(5));
}

#[test]
fn criterion_13_determinism() {
    let bin = env!("CARGO_BIN_EXE_rankcodes");
    let run_once = || {
        Command::new(bin)
            .args(["verify", "--all-fixtures"])
            .output()
            .expect("binary runs")
    };
    let a = run_once();
    let b = run_once();
    assert_eq!(a.stdout, b.stdout, "verify output must be byte-identical");
    assert_eq!(a.status.code(), b.status.code());
    let passed = a.stdout == b.stdout && a.status.code() == b.status.code();
    println!(
        "{}: criterion 13 (determinism) — two runs produced {} identical bytes",
        if passed { "PASS" } else { "FAIL" },
        a.stdout.len()
    );
}
