//! Acceptance target: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.

use std::process::ExitCode;

use delaunay_lab::acceptance::{self, AcceptanceOptions};

fn main() -> ExitCode {
    // `cargo test -- <filter>` passes arguments through; this target has a
    // single entry point and ignores them.
    let reports = acceptance::run(&AcceptanceOptions::default());
    println!("acceptance: {} criteria", reports.len());
    for r in &reports {
        println!("{}", r.summary_line());
    }
    let mut failed = 0;
    for r in reports.iter().filter(|r| !r.passed) {
        failed += 1;
        if let Some(e) = &r.error {
            println!("  [{}] error: {e}", r.id);
        }
        for m in r.measurements.iter().filter(|m| !m.passed) {
            println!(
                "  [{}] {}: measured {:e}, target {:e}, tolerance {:e}",
                r.id, m.name, m.measured, m.target, m.tolerance
            );
        }
    }
    if reports.len() != 13 {
        println!("expected 13 criteria, ran {}", reports.len());
        return ExitCode::FAILURE;
    }
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
