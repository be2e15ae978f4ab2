// Mixed problem: `u = 0` on the hole, Steklov condition outside.
//
// ```bash
// cargo run --example dirichlet_steklov
// ```

use steklov_shell::eigensolver::{solve_auto, Problem, AUTO_MAX_ORDER};
use steklov_shell::geometry::ShellConfig;
use steklov_shell::rayleigh::{ds_bound, tau1_concentric};

pub fn run_example() -> steklov_shell::Result<()> {
    let a = 0.3;
    println!("planar: tau1(0) = 1/ln(1/a) = {:.12}", tau1_concentric(2, a)?);
    for d in [0.0, 0.2, 0.4, 0.6] {
        let cfg = ShellConfig::new(2, a, d)?;
        let s = solve_auto(&cfg, Problem::DirichletSteklov, AUTO_MAX_ORDER)?;
        println!("  d = {d}: solver {:.12}, bound {:.12}", s.result.first_eigenvalue(), ds_bound(&cfg)?);
    }
    for n in [3, 4, 5] {
        let c0 = ShellConfig::new(n, a, 0.0)?;
        let c1 = c0.with_offset(0.5 * c0.max_offset())?;
        println!(
            "n = {n}: tau1(0) = {:.10}, bound at d = {:.3}: {:.10}",
            ds_bound(&c0)?,
            c1.d,
            ds_bound(&c1)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
