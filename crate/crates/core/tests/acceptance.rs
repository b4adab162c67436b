//! Runs every acceptance criterion, prints one PASS/FAIL line each, and exits
//! nonzero if any fails. Pass criterion numbers as arguments to run a subset.

use std::process::ExitCode;
use std::time::Instant;

use edgestat::verify::CRITERIA;

fn main() -> ExitCode {
    let wanted: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (id, _, run) in CRITERIA {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        ran += 1;
        println!("{} ({:.1}s)", outcome.line(), start.elapsed().as_secs_f64());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/{ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
