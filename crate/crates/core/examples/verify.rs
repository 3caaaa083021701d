//! Runs the oracle cross-checks and prints one line per check.

use lonlab::{run_verify, VerifyOptions};

fn main() -> lonlab::Result<()> {
    let report = run_verify(&VerifyOptions {
        max_n: 7,
        seeds: 3,
        fault: None,
    })?;
    for r in &report.results {
        println!("{r}");
    }
    println!("{}", if report.passed() { "all checks passed" } else { "MISMATCH" });
    Ok(())
}
