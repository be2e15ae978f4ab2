// Trefftz solve for the planar annulus with the hole moved off centre.
// The first eigenvalue drops below the concentric value and its double
// multiplicity splits.
//
// ```bash
// cargo run --example planar_eigensolver
// ```

use steklov_shell::eigensolver::{solve_auto, solve_steklov, Problem, AUTO_MAX_ORDER};
use steklov_shell::geometry::ShellConfig;
use steklov_shell::rayleigh::steklov_bound;
use steklov_shell::shell_spectrum::sigma1_closed_form;

pub fn run_example() -> steklov_shell::Result<()> {
    let a = 0.5;
    let concentric = solve_steklov(&ShellConfig::new(2, a, 0.0)?, 24, 512)?;
    println!("d = 0: sigma1 = {:.14} (closed form {:.14})", concentric.first_eigenvalue(), sigma1_closed_form(2, a)?);
    println!("       groups {:?}", &concentric.groups()[..4]);

    for d in [0.1, 0.3, 0.45] {
        let cfg = ShellConfig::new(2, a, d)?;
        let auto = solve_auto(&cfg, Problem::Steklov, AUTO_MAX_ORDER)?;
        let r = &auto.result;
        println!(
            "d = {d}: sigma1 = {:.12}, sigma2 = {:.12}, bound = {:.12}, order {}, converged {}, residual {:.1e}",
            r.first_eigenvalue(),
            r.eigenvalues[2],
            steklov_bound(&cfg)?.bound,
            r.order,
            auto.converged,
            r.residual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
