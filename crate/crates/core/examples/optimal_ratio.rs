// Hole ratio that maximizes the boundary-normalized `σ₁` of `B \ εB̄`,
// and the small-hole slope.
//
// ```bash
// cargo run --example optimal_ratio
// ```

use steklov_shell::shell_spectrum::{normalized_increment, optimal_eps, scale_invariant};

pub fn run_example() -> steklov_shell::Result<()> {
    for n in [2, 3, 4, 5] {
        let (eps, value) = optimal_eps(n)?;
        let ball = scale_invariant(n, 0.0)?;
        println!("n = {n}: eps_n = {eps:.8}, gain over the ball {:.4}%", 100.0 * (value / ball - 1.0));
    }
    for n in [3, 4] {
        let slopes: Vec<String> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&e| Ok(format!("{:.5}", normalized_increment(n, e)?)))
            .collect::<steklov_shell::Result<_>>()?;
        println!("n = {n}: normalized increments {} -> 1/(n-1) = {:.5}", slopes.join(", "), 1.0 / (n - 1) as f64);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
