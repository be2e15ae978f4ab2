// Upper bound for `σ₁` of an offset shell from the concentric
// eigenfunction, with the integrals that make it up.
//
// ```bash
// cargo run --example rayleigh_bound
// ```

use steklov_shell::geometry::ShellConfig;
use steklov_shell::rayleigh::steklov_bound;
use steklov_shell::shell_spectrum::sigma1_closed_form;

pub fn run_example() -> steklov_shell::Result<()> {
    let (n, a) = (3, 0.4);
    println!("closed form sigma1 = {:.12}", sigma1_closed_form(n, a)?);
    println!("{:>6} {:>14} {:>10} {:>12} {:>12}", "d", "bound", "w2", "w3", "v3");
    for j in 0..=5 {
        let d = 0.95 * (1.0 - a) * j as f64 / 5.0;
        let b = steklov_bound(&ShellConfig::new(n, a, d)?)?;
        println!("{d:>6.3} {:>14.10} {:>10.1e} {:>12.6} {:>12.6}", b.bound, b.w2, b.w3, b.v3);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
