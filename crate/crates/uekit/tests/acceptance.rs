//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Counts, sizes, and tolerances are pinned here; every criterion is
//! zero-tolerance. Run with `cargo test --test acceptance -- --nocapture`.

use std::process::Command;

use uekit::suite::{self, suite_rng, LawReport, OpTable};

const SEED: u64 = 7;

fn report(number: u32, name: &str, law: &LawReport) {
    let ok = law.ok();
    println!(
        "criterion {number:02} {name}: {} ({} cases, {} failures)",
        if ok { "PASS" } else { "FAIL" },
        law.cases,
        law.failures
    );
    assert!(
        ok,
        "criterion {number:02} {name} failed; first counterexample: {:?}",
        law.first_counterexample
    );
}

#[test]
fn criterion_01_ultrafilter_enumeration() {
    let law = suite::law_ultrafilter_enumeration();
    assert_eq!(law.cases, 4); // base sizes 1..=4
    report(1, "ultrafilter_enumeration", &law);
}

#[test]
fn criterion_02_m_operator_laws() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_m_operator_laws(&mut rng, 1000, 8, &OpTable::correct());
    assert_eq!(law.cases, 1000);
    report(2, "m_operator_laws", &law);
}

#[test]
fn criterion_03_semantics_coherence() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_semantics_coherence(&mut rng, 500, 8);
    assert_eq!(law.cases, 500);
    report(3, "semantics_coherence", &law);
}

#[test]
fn criterion_04_truth_transfer_all_kinds() {
    let mut rng = suite_rng(SEED);
    for kind in uekit::UeKind::ALL {
        let law = suite::law_truth_transfer(&mut rng, kind, 300, 6);
        assert_eq!(law.cases, 300);
        report(4, &format!("truth_transfer_{kind}"), &law);
    }
}

#[test]
fn criterion_05_finite_model_collapse() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_finite_model_collapse(&mut rng, 300, 6);
    report(5, "finite_model_collapse", &law);
    let named = suite::law_m1_regression();
    report(5, "m1_contingency_ea_regression", &named);
}

#[test]
fn criterion_06_equivalence_transfer() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_equivalence_transfer(&mut rng, 500, 4);
    assert_eq!(law.cases, 500);
    report(6, "equivalence_transfer", &law);
}

#[test]
fn criterion_07_oracle_crosscheck() {
    let law = suite::law_oracle_crosscheck(6000);
    assert!(law.cases >= 2000, "canonical sample too small: {}", law.cases);
    report(7, "oracle_crosscheck", &law);
}

#[test]
fn criterion_08_hennessy_milner() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_hennessy_milner(&mut rng, 500, 4);
    report(8, "hennessy_milner", &law);
    let named = suite::law_hennessy_milner_named_pair();
    report(8, "hennessy_milner_named_pair", &named);
}

#[test]
fn criterion_09_saturation() {
    let mut rng = suite_rng(SEED);
    let nabla = suite::law_nabla_saturation(&mut rng, 100, 5);
    assert_eq!(nabla.cases, 100);
    report(9, "nabla_saturation", &nabla);
    let delta = suite::law_delta_saturation(&mut rng, 100, 5);
    assert_eq!(delta.cases, 100);
    report(9, "delta_saturation", &delta);
}

#[test]
fn criterion_10_complement_closed() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_complement_closed(&mut rng, 300, 6);
    assert_eq!(law.cases, 300);
    report(10, "complement_closed_neighborhoods", &law);
}

#[test]
fn criterion_11_parser_roundtrip_and_cli_determinism() {
    let mut rng = suite_rng(SEED);
    let law = suite::law_parser_roundtrip(&mut rng, 1000);
    assert_eq!(law.cases, 1000);
    report(11, "parser_roundtrip", &law);

    let run = || {
        Command::new(env!("CARGO_BIN_EXE_uekit"))
            .args(["suite", "--seed", "7", "--count", "40", "--max-states", "4", "--json"])
            .output()
            .expect("run uekit suite")
    };
    let a = run();
    let b = run();
    let ok = a.status.success() && b.status.success() && a.stdout == b.stdout;
    println!(
        "criterion 11 cli_determinism: {} (byte-identical stdout over repeated seeded runs)",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "cli determinism failed: status {:?}/{:?}", a.status, b.status);
}
