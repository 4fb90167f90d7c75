//! Runs every acceptance criterion at its fixed size and threshold, one
//! line per criterion.

use std::process::ExitCode;

use polyresolve::acceptance::run_all;

fn main() -> ExitCode {
    let results = run_all(|r| println!("{r}"));
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
