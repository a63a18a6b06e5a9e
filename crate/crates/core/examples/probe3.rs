use qtunnel_core::verify::{run_suite, suite_names};
use std::time::Instant;

fn main() {
    let mut all_pass = true;
    for name in suite_names() {
        let start = Instant::now();
        let checks = run_suite(name).unwrap();
        let elapsed = start.elapsed();
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        println!(
            "{name:12} {:>3} checks  {:>8.2?}  {}",
            checks.len(),
            elapsed,
            if failed.is_empty() { "PASS" } else { "FAIL" }
        );
        for c in failed {
            all_pass = false;
            println!("    FAIL {}: expected {}, observed {} (tol {})", c.name, c.expected, c.observed, c.tolerance);
        }
    }
    println!("overall: {}", if all_pass { "PASS" } else { "FAIL" });
}
