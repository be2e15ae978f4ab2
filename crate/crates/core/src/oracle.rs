//! Independent reference computations.
//!
//! Each routine reaches a quantity by a different path from the main
//! implementation (brute-force summation, bisection, nested quadrature,
//! finite differences), so agreement between the two is evidence rather
//! than tautology.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::{radius_raw, sin_pow, ShellConfig};
use crate::quadrature::{integrate, integrate_value, Tolerance};
use crate::shell_spectrum::{mu_sigma, quadratic_coeffs, scale_invariant};

/// `|S^m|` from `|S^0| = 2`, `|S^1| = 2π`, `|S^m| = 2π/(m-1) |S^{m-2}|`.
pub fn sphere_area_recursive(m: usize) -> f64 {
    match m {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (m - 1) as f64 * sphere_area_recursive(m - 2),
    }
}

/// `∫₀^π sin^p t dt` by adaptive quadrature.
pub fn wallis_quadrature(p: usize) -> Result<f64> {
    integrate_value(|t| sin_pow(t, p), 0.0, PI, Tolerance::uniform(1e-14))
}

/// First `terms` terms of `Σ (1/j) C(2j, j) x^j`, each binomial built from
/// scratch in floating point.
pub fn catalan_partial(x: f64, terms: usize) -> f64 {
    (1..=terms)
        .map(|j| {
            let binom: f64 = (1..=j).map(|i| (j + i) as f64 / i as f64).product();
            binom * x.powi(j as i32) / j as f64
        })
        .sum()
}

/// First `terms` terms of `Σ_{j≥0} I_{2j} x^{2j}` with `I_{2j}` from quadrature.
pub fn wallis_even_partial(x: f64, terms: usize) -> Result<f64> {
    let mut sum = 0.0;
    for j in 0..terms {
        let term = x.powi(2 * j as i32);
        if term < 1e-18 {
            break;
        }
        sum += wallis_quadrature(2 * j)? * term;
    }
    Ok(sum)
}

/// `2π ln(1+d²)` recovered as `2π ln(1+d²) + ∫₀^{2π} ln(1+d²+2d cos t) dt`,
/// the left term being the form in which the series arises.
pub fn log_series_by_quadrature(d: f64) -> Result<f64> {
    let integral = integrate_value(
        |t: f64| (1.0 + d * d + 2.0 * d * t.cos()).ln(),
        0.0,
        2.0 * PI,
        Tolerance::uniform(1e-14),
    )?;
    Ok(2.0 * PI * (1.0 + d * d).ln() + integral)
}

/// `∫₀^{2π} ln(1+d²+2d cos t) dt`, which should vanish for `|d| < 1`.
pub fn planar_log_integral(d: f64) -> Result<f64> {
    Ok(integrate(|t: f64| (1.0 + d * d + 2.0 * d * t.cos()).ln(), 0.0, 2.0 * PI, 1e-13, 1e-13)?.value)
}

/// Smaller root of the degree-`k` quadratic located by bisection on the
/// polynomial between 0 and its vertex.
pub fn lower_root_bisection(n: usize, a: f64, k: usize) -> Result<f64> {
    let q = quadratic_coeffs(n, a, k)?;
    let p = |x: f64| (q.a * x + q.b) * x + q.c;
    let (mut lo, mut hi) = (0.0, -q.b / (2.0 * q.a));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if p(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Central difference `(f(x+h) - f(x-h)) / 2h`.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `∫_{Ω_d} |∇f|²` for `f = x_{n-1}(1 + μ|x|^{-n})` by nested quadrature
/// in `(θ, r)` of the Cartesian gradient.
///
/// With `g(r) = 1 + μ r^{-n}`, `|∇f|² = g² + 2 g g' x²_{n-1}/r + g'² x²_{n-1}`;
/// averaging `x²_{n-1}` over the remaining sphere `S^{n-2}` gives
/// `r² sin²θ/(n-1)`.
pub fn direct_energy(cfg: &ShellConfig) -> Result<f64> {
    let (n, a, d) = (cfg.n, cfg.a, cfg.d);
    let nf = n as f64;
    let mu = mu_sigma(n, a)?;
    let surface = sphere_area_recursive(n - 2);
    let inner_tol = Tolerance::uniform(1e-14);
    let outer = |theta: f64| -> Result<f64> {
        let s2 = theta.sin().powi(2);
        let radial = integrate_value(
            |r: f64| {
                let g = 1.0 + mu * r.powf(-nf);
                let dg = -nf * mu * r.powf(-nf - 1.0);
                let grad2 = g * g + s2 / (nf - 1.0) * (2.0 * r * g * dg + r * r * dg * dg);
                grad2 * r.powi(n as i32 - 1)
            },
            a,
            radius_raw(d, theta),
            inner_tol,
        )?;
        Ok(sin_pow(theta, n - 2) * radial)
    };
    // The outer integrand is fallible; remember the first error.
    let failure = RefCell::new(None);
    let value = integrate_value(
        |t| {
            outer(t).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                0.0
            })
        },
        0.0,
        PI,
        Tolerance::uniform(1e-13),
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(surface * value?)
}

/// Best of `scale_invariant(n, j/points)` for `j = 1..points-1`.
pub fn grid_argmax(n: usize, points: usize) -> Result<(f64, f64)> {
    let mut best = (0.0, f64::NEG_INFINITY);
    for j in 1..points {
        let eps = j as f64 / points as f64;
        let v = scale_invariant(n, eps)?;
        if v > best.1 {
            best = (eps, v);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rayleigh::steklov_bound;
    use crate::special_fn::{catalan_series, sphere_area, wallis, wallis_even_series, log_series_identity};
    use crate::shell_spectrum::sigma1_closed_form;

    #[test]
    fn sphere_routes_agree() {
        for m in 0..12 {
            let (x, y) = (sphere_area(m), sphere_area_recursive(m));
            assert!(((x - y) / y).abs() < 1e-14, "m={m}");
        }
    }

    #[test]
    fn wallis_routes_agree() {
        for p in 0..=30 {
            assert!((wallis(p) - wallis_quadrature(p).unwrap()).abs() < 1e-11, "p={p}");
        }
        assert!((wallis(7) - wallis_quadrature(7).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn series_routes_agree() {
        assert!((catalan_series(0.2).unwrap() - catalan_partial(0.2, 200)).abs() < 1e-10);
        assert!((wallis_even_series(0.9).unwrap() - wallis_even_partial(0.9, 2000).unwrap()).abs() < 1e-9);
        assert!((log_series_identity(0.3).unwrap() - log_series_by_quadrature(0.3).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn bisection_matches_closed_form() {
        for n in 2..=6 {
            let s = sigma1_closed_form(n, 0.35).unwrap();
            assert!(((lower_root_bisection(n, 0.35, 1).unwrap() - s) / s).abs() < 1e-13);
        }
    }

    #[test]
    fn energy_routes_agree() {
        for (n, a, d) in [(2, 0.5, 0.0), (3, 0.3, 0.2), (2, 0.3, 0.28)] {
            let c = ShellConfig::new(n, a, d).unwrap();
            let direct = direct_energy(&c).unwrap();
            let assembled = steklov_bound(&c).unwrap().energy;
            assert!((direct - assembled).abs() < 1e-8, "{c:?}: {direct} vs {assembled}");
        }
    }
}
