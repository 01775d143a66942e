//! Acceptance gate: one test per criterion of the self-test suite, so the
//! harness prints one pass/fail line for each. Run with `--nocapture` to
//! also see each criterion's summary line and wall time.

use schub::selftest::{run, Profile};

fn gate(number: usize, profile: Profile) {
    let report = run(number, profile).expect("criterion number in range");
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_1_a2_worked_example() {
    gate(1, Profile::Full);
}

#[test]
fn criterion_2_a2_longest_element_square() {
    gate(2, Profile::Full);
}

#[test]
fn criterion_3_b3_worked_example() {
    gate(3, Profile::Full);
}

#[test]
fn criterion_4_inverse_identities() {
    gate(4, Profile::Full);
}

#[test]
fn criterion_5_chevalley_closed_form() {
    gate(5, Profile::Full);
}

#[test]
fn criterion_6_loop_homology_product_rules() {
    gate(6, Profile::Full);
}

#[test]
fn criterion_7_classical_limit() {
    gate(7, Profile::Full);
}

#[test]
fn criterion_8_structural_properties() {
    gate(8, Profile::Full);
}

#[test]
fn criterion_9_naive_oracle_equivalence() {
    gate(9, Profile::Full);
}
