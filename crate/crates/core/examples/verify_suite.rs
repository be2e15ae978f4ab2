// Run the fast invariant suite from code and list any failures.
//
// ```bash
// cargo run --release --example verify_suite
// ```

use steklov_shell::verify::{run, VerifyOptions};

pub fn run_example() -> steklov_shell::Result<()> {
    let report = run(&VerifyOptions::default());
    let passed = report.checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", report.checks.len());
    for c in report.failures() {
        println!("FAIL {}: measured {:e} {} {:e}", c.name, c.measured, c.relation.symbol(), c.tolerance);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
