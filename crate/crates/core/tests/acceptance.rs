use std::io::Write;

use mirrorcat::acceptance::{Outcome, Suite, CRITERIA};

#[test]
fn acceptance() {
    let suite = Suite::new().expect("shipped fixtures load");
    let results = suite.run();
    assert_eq!(results.len(), CRITERIA.len());
    // written past the test harness capture so the report is always shown
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{r}").unwrap();
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}

#[test]
fn injected_fault_fails_the_fusion_criterion() {
    let suite = Suite::new().unwrap().with_injected_fault(true);
    let r = suite.run_one(1).unwrap();
    assert!(matches!(r.outcome, Outcome::Fail(_)), "{r}");
}

#[test]
fn corrupted_fixture_is_an_input_error() {
    assert!(Suite::new().unwrap().with_fixture("z3", "{\"labels\": ").is_err());
    assert!(Suite::new().unwrap().with_fixture("nonesuch", "{}").is_err());
}
