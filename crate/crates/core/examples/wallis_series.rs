// Wallis integrals, sphere areas and the series behind the planar
// logarithmic integral.
//
// ```bash
// cargo run --example wallis_series
// ```

use std::f64::consts::PI;

use steklov_shell::oracle::planar_log_integral;
use steklov_shell::special_fn::{catalan_series, log_series_identity, sphere_area, wallis, WallisTable};

pub fn run_example() -> steklov_shell::Result<()> {
    let table = WallisTable::new(8);
    println!("I_p for p = 0..8: {:?}", table.values().iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>());
    println!("I_51 = {:.15}", wallis(51));
    for m in 0..5 {
        println!("|S^{m}| = {:.12}", sphere_area(m));
    }
    for d in [0.25, 0.5, 0.75] {
        println!(
            "d = {d}: series {:.12} vs 2 pi ln(1+d^2) {:.12}; log integral {:.1e}",
            log_series_identity(d)?,
            2.0 * PI * (1.0 + d * d).ln(),
            planar_log_integral(d)?
        );
    }
    println!("catalan(0.2) = {:.14}", catalan_series(0.2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> steklov_shell::Result<()> {
    run_example()
}
