//! All acceptance criteria at their stated tolerances, one line each.

use std::process::ExitCode;

use bogo_core::verify::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, 42);
        println!(
            "criterion {:>2} [{}] {} ({} checks, worst residual/tol {:.1e}, {:.2} s)",
            id,
            if r.pass() { "pass" } else { "FAIL" },
            r.title,
            r.checks.len(),
            r.worst_ratio(),
            r.seconds
        );
        for c in r.checks.iter().filter(|c| !c.pass) {
            println!("    failed: {} residual {:e} tol {:e}", c.name, c.residual, c.tolerance);
        }
        if !r.pass() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
