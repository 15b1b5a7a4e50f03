//! Full-scale acceptance suite: one test per verification check, so the
//! harness prints one pass/fail line per criterion. The same checks back
//! the CLI `verify` command.

use acgame::verify::{self, VerifyOptions};

fn assert_check(outcome: verify::CheckOutcome) {
    assert!(
        outcome.passed,
        "check {} ({}) failed: {}",
        outcome.id, outcome.name, outcome.details
    );
    println!("PASS {} ({}): {}", outcome.id, outcome.name, outcome.details);
}

fn full_scale() -> VerifyOptions {
    VerifyOptions::default()
}

#[test]
fn acceptance_01_prop1_solo_exact_growth() {
    assert_check(verify::check_prop1_solo_exact_growth(&full_scale()));
}

#[test]
fn acceptance_02_prop3_pair_split_exact_growth() {
    assert_check(verify::check_prop3_pair_split_exact_growth(&full_scale()));
}

#[test]
fn acceptance_03_prop2_pair_joint_growth_bound() {
    assert_check(verify::check_prop2_pair_joint_growth_bound(&full_scale()));
}

#[test]
fn acceptance_04_lemma1_solo_overtakes_splits() {
    assert_check(verify::check_lemma1_solo_overtakes_splits(&full_scale()));
}

#[test]
fn acceptance_05_thm4_two_player_equilibrium() {
    assert_check(verify::check_thm4_two_player_equilibrium(&full_scale()));
}

#[test]
fn acceptance_06_thm5_thm6_matching_stability() {
    assert_check(verify::check_thm5_thm6_matching_stability(&full_scale()));
}

#[test]
fn acceptance_07_growth_law_fits() {
    assert_check(verify::check_growth_law_fits());
}

#[test]
fn acceptance_08_bibliometrics_oracle_agreement() {
    assert_check(verify::check_bibliometrics_oracle_agreement());
}

#[test]
fn acceptance_09_citation_conservation() {
    assert_check(verify::check_citation_conservation());
}

#[test]
fn acceptance_10_calibration_closure() {
    assert_check(verify::check_calibration_closure());
}
