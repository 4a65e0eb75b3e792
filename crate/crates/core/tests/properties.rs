//! Property suites, one test each.

mod common;

use common::props;

const CASES: u32 = 256;

fn check(suite: props::Suite) {
    if let Err(e) = suite(CASES) {
        panic!("{e}");
    }
}

#[test]
fn nnf_idempotence() {
    check(props::nnf_idempotence);
}

#[test]
fn nnf_duality() {
    check(props::nnf_duality);
}

#[test]
fn nnf_preserves_semantics() {
    check(props::nnf_semantics);
}

#[test]
fn role_closure_fixpoint() {
    check(props::role_closure_fixpoint);
}

#[test]
fn regularity_accepts_regular_forms() {
    check(props::regularity);
}

#[test]
fn regularity_rejects_mutual_chains() {
    check(props::regularity_rejects);
}

#[test]
fn materialize_idempotence() {
    check(props::materialize_idempotence);
}

#[test]
fn materialize_monotonicity() {
    check(props::materialize_monotonicity);
}

#[test]
fn materialize_named_individuals_only() {
    check(props::materialize_named_only);
}

#[test]
fn classify_subsumes_coherence() {
    check(props::classify_coherence);
}

#[test]
fn dl_round_trip() {
    check(props::dl_round_trip);
}

#[test]
fn turtle_round_trip() {
    check(props::turtle_round_trip);
}
