//! Runs the full verification suite and reports one line per acceptance criterion.

use kempe_cli::{criteria, run_verification, RunConfig, Suite, Verdict};

fn main() {
    let config = RunConfig {
        command: "verify".into(),
        suite: Suite::Full,
        jobs: std::thread::available_parallelism().map_or(2, |n| n.get().min(4)),
        ..RunConfig::default()
    };
    let report = run_verification(&config).expect("verification runs");

    let mut failures = Vec::new();
    for (criterion, ids) in criteria().into_iter().filter(|(c, _)| *c > 0) {
        let mut bad = Vec::new();
        for id in &ids {
            let check = report.check(id).unwrap_or_else(|| panic!("{id} missing from report"));
            let exact = check.computed == check.expected;
            if check.verdict != Verdict::Pass || !exact {
                bad.push(format!("{id}: {} computed={} expected={}", check.verdict, check.computed, check.expected));
            }
        }
        let status = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {criterion:>2}: {status} ({})", ids.join(", "));
        for b in &bad {
            println!("    {b}");
        }
        if !bad.is_empty() {
            failures.push(criterion);
        }
    }
    assert_eq!(criteria().iter().filter(|(c, _)| *c > 0).count(), 11);
    if !failures.is_empty() {
        eprintln!("failing criteria: {failures:?}");
        std::process::exit(1);
    }
}
