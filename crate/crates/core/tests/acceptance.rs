//! Acceptance criteria: one PASS/FAIL line each, nonzero exit on any failure.

use casimir_core::selftest;
use std::process::ExitCode;

fn main() -> ExitCode {
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut failed = 0;
    for report in selftest::run_all() {
        println!("{}", report.summary());
        for c in &report.checks {
            if verbose || !c.passed {
                println!(
                    "    {} {}: value {:.6e}, expected {:.6e}, deviation {:.3e}, tolerance {:.1e}",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.label,
                    c.value,
                    c.expected,
                    c.deviation,
                    c.tolerance
                );
            }
        }
        if !report.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria failed", failed, selftest::criterion_count());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
