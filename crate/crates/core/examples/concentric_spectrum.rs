// Steklov spectrum of a concentric shell `B \ aB̄` in several dimensions.
//
// ```bash
// cargo run --example concentric_spectrum
// ```

use steklov_shell::shell_spectrum::{coverage_limit, delta0, sigma1_closed_form, spectrum};

pub fn run_example() -> steklov_shell::Result<()> {
    let a = 0.5;
    for n in [2, 3, 4] {
        let limit = coverage_limit(n, a, 8)?;
        println!("n = {n}, a = {a}: sigma1 = {:.12}, delta0 = {:.6}", sigma1_closed_form(n, a)?, delta0(n, a)?);
        println!("  {:>14}  {:>2}  {:<8} {:>4}", "value", "k", "branch", "mult");
        for e in spectrum(n, a, 8)?.iter().filter(|e| e.value < limit).take(8) {
            println!("  {:>14.10}  {:>2}  {:<8} {:>4}", e.value, e.k, e.branch, e.multiplicity);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
