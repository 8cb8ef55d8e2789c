//! Runs the ten acceptance criteria at their pinned parameters and tolerances.
//! Prints one line per criterion and exits nonzero if any fails.

use qcuntz::suite::{suite_all, SuiteConfig};

fn main() {
    let report = suite_all(&SuiteConfig::default());
    for c in &report.checks {
        println!("{}", c.summary_line());
    }
    let failed = report.failures().count();
    println!("acceptance: {} passed, {} failed", report.checks.len() - failed, failed);
    if !report.all_pass {
        std::process::exit(1);
    }
}
