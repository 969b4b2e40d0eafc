//! Acceptance gate: runs the full property suite and prints one
//! pass/fail line per criterion.

use lpq::suite;

#[test]
fn acceptance_suite() {
    let entries = suite::run(0xC0FFEE).expect("suite must run to completion");
    assert_eq!(entries.len(), 10);
    let mut failures = Vec::new();
    for e in &entries {
        let status = if e.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:2}: {} — {}", e.id, e.name, e.detail);
        if !e.passed {
            failures.push(e.id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn suite_is_deterministic_under_a_fixed_seed() {
    let a = serde_json::to_string(&suite::run(7).unwrap()).unwrap();
    let b = serde_json::to_string(&suite::run(7).unwrap()).unwrap();
    assert_eq!(a, b);
}
