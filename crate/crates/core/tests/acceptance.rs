//! Acceptance gate: one check suite per criterion, each printed as a
//! pass/fail line with its runtime. Run with `--nocapture` to see the
//! per-criterion breakdown even on success.

use qtunnel_core::verify::{run_suite, CheckResult};
use std::time::Instant;

const CRITERIA: &[(u32, &str, &str)] = &[
    (1, "walks", "walk algebra equals brute-force enumeration exactly"),
    (2, "doublewell", "symmetric double well: level, time and gap scaling"),
    (3, "trichotomy", "perfect / partial / none instances behave as classified"),
    (4, "instability", "equal-arm 4/9 plateau vs unequal-arm near-perfect transfer"),
    (5, "mixed", "apex start reaches the even two-well mixture"),
    (6, "apex", "far-pair transfer on and off the equal-coupling locus"),
    (7, "spectral", "eigenvalue and eigenvector depth asymptotics"),
    (8, "ztilde", "well-series fixed point within the truncation bound"),
    (9, "exact", "radical rationality, parity and polynomial identities"),
    (10, "invariants", "randomized unitarity, group law, residuals, determinism"),
];

fn report(criterion: u32, label: &str, checks: &[CheckResult], elapsed: std::time::Duration) -> bool {
    let failed: Vec<&CheckResult> = checks.iter().filter(|c| !c.pass).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion:>2} [{status}] {label} ({} checks, {elapsed:.2?})",
        checks.len()
    );
    for c in &failed {
        println!(
            "    failed: {} — expected {}, observed {} (tolerance {})",
            c.name, c.expected, c.observed, c.tolerance
        );
    }
    failed.is_empty()
}

#[test]
fn acceptance() {
    let mut all_pass = true;
    for &(criterion, suite, label) in CRITERIA {
        let start = Instant::now();
        let checks = run_suite(suite).expect("suite exists");
        all_pass &= report(criterion, label, &checks, start.elapsed());
    }
    assert!(all_pass, "at least one acceptance criterion failed");
}
