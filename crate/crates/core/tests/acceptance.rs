//! One line per acceptance criterion. All checks are exact except the
//! benchmark, whose bound is a speedup of at least 10x (median of 3 runs).

use superali_core::suites::{run_criterion, SUITES};

fn main() {
    let mut failed = Vec::new();
    for (n, _) in SUITES {
        match run_criterion(n) {
            Ok(r) => {
                println!("{}", r.summary_line());
                if !r.passed() {
                    failed.push(n);
                }
            }
            Err(e) => {
                println!("FAIL [{n:>2}] error: {e}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", SUITES.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
