//! Exact Steklov spectrum of the concentric shell `B \ aB̄`.
//!
//! Separating variables, an eigenfunction is `α(r)·Y(ω)` with `Y` a
//! spherical harmonic of degree `k`. For `k ≥ 1` the radial profile is
//! `r^k + q·r^{-(k+n-2)}` and the two boundary conditions force the
//! eigenvalue `δ` to solve `A_k δ² + B_k δ + C_k = 0`, whose roots are both
//! positive. For `k = 0` the eigenvalues are `0` (constants) and `δ₀`.
//! The lower root at `k = 1` is `σ₁`, with multiplicity `n`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special_fn::{harmonic_dim, sphere_area};

pub const DEFAULT_K_MAX: usize = 64;

/// Which separated family an eigenvalue belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `σ = 0`, constant eigenfunction.
    Zero,
    /// `δ₀`, the nonconstant radial mode.
    Radial0,
    /// Smaller root of the degree-`k` quadratic.
    Lower,
    /// Larger root of the degree-`k` quadratic.
    Upper,
}

impl Branch {
    /// Tie-break rank used when sorting equal values.
    fn rank(self) -> u8 {
        match self {
            Branch::Zero => 0,
            Branch::Lower => 1,
            Branch::Upper => 2,
            Branch::Radial0 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Zero => "zero",
            Branch::Radial0 => "radial0",
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// One eigenvalue of the concentric shell together with its eigenspace size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub k: usize,
    pub branch: Branch,
    pub value: f64,
    pub multiplicity: u64,
    /// Coefficient of the decaying term in the radial profile: `q` in
    /// `r^k + q r^{-(k+n-2)}`, or the `ln r` coefficient of the planar
    /// radial mode.
    pub radial_coeff: f64,
}

/// Coefficients of `A δ² + B δ + C = 0` for angular order `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub discriminant: f64,
}

fn check_shell(n: usize, a: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain("inner radius must lie in (0,1)"));
    }
    Ok(())
}

pub fn quadratic_coeffs(n: usize, a: f64, k: usize) -> Result<QuadraticCoeffs> {
    check_shell(n, a)?;
    if k == 0 {
        return Err(Error::domain("angular order must be at least 1"));
    }
    let (kf, m) = (k as f64, (k + n - 2) as f64);
    let p_hi = a.powi((2 * k + n - 1) as i32);
    let p_lo = a.powi((2 * k + n - 2) as i32);
    let qa = a - p_hi;
    let qb = -(m * p_hi + kf * p_lo + kf * a + m);
    let qc = m * kf * (1.0 - p_lo);
    Ok(QuadraticCoeffs { a: qa, b: qb, c: qc, discriminant: qb * qb - 4.0 * qa * qc })
}

/// Both roots `(lower, upper)` of the degree-`k` quadratic.
pub fn delta_pair(n: usize, a: f64, k: usize) -> Result<(f64, f64)> {
    let q = quadratic_coeffs(n, a, k)?;
    let s = -q.b + q.discriminant.sqrt();
    Ok((2.0 * q.c / s, s / (2.0 * q.a)))
}

/// The nonzero radial eigenvalue `δ₀`.
pub fn delta0(n: usize, a: f64) -> Result<f64> {
    check_shell(n, a)?;
    if n == 2 {
        return Ok((1.0 + a) / (a * (1.0 / a).ln()));
    }
    let nf = (n - 2) as f64;
    Ok(nf * (1.0 + a.powi(n as i32 - 1)) / (a * (1.0 - a.powi(n as i32 - 2))))
}

/// First nonzero Steklov eigenvalue `σ₁(B \ aB̄)`.
///
/// Uses the radical form with the square root in the denominator, which is
/// free of cancellation as `a → 0`.
pub fn sigma1_closed_form(n: usize, a: f64) -> Result<f64> {
    check_shell(n, a)?;
    let nm1 = (n - 1) as f64;
    let an = a.powi(n as i32);
    let b = nm1 * an * a + an + a + nm1;
    let disc = b * b - 4.0 * nm1 * a * (1.0 - an) * (1.0 - an);
    Ok(2.0 * nm1 * (1.0 - an) / (b + disc.sqrt()))
}

/// `μ = (1 - σ₁)/(n + σ₁ - 1)`, the decay coefficient of the first
/// eigenfunctions `x_i (1 + μ |x|^{-n})`.
pub fn mu_sigma(n: usize, a: f64) -> Result<f64> {
    let s = sigma1_closed_form(n, a)?;
    Ok((1.0 - s) / (n as f64 + s - 1.0))
}

/// `q = (k - δ)/(k + n - 2 + δ)` from the outer condition.
///
/// On the lower branch `δ` is close to `k` once `a^{2k}` is negligible, so
/// the same value is taken from the inner condition instead,
/// `q = a^{k+m}(δa + k)/(m - δa)` with `m = k + n - 2`, which has no
/// cancellation there.
fn branch_coeff(n: usize, a: f64, k: usize, branch: Branch, delta: f64) -> f64 {
    let m = (k + n - 2) as f64;
    match branch {
        Branch::Lower => a.powi((2 * k + n - 2) as i32) * (delta * a + k as f64) / (m - delta * a),
        _ => (k as f64 - delta) / (m + delta),
    }
}

/// Sorted concentric spectrum for angular orders up to `k_max`.
///
/// Values above [`coverage_limit`] may have neighbours from `k > k_max`
/// that are not listed.
pub fn spectrum(n: usize, a: f64, k_max: usize) -> Result<Vec<SpectrumEntry>> {
    check_shell(n, a)?;
    if k_max == 0 {
        return Err(Error::domain("k_max must be at least 1"));
    }
    let d0 = delta0(n, a)?;
    let radial_coeff = if n == 2 { d0 } else { branch_coeff(n, a, 0, Branch::Radial0, d0) };
    let mut entries = vec![
        SpectrumEntry { k: 0, branch: Branch::Zero, value: 0.0, multiplicity: 1, radial_coeff: 0.0 },
        SpectrumEntry { k: 0, branch: Branch::Radial0, value: d0, multiplicity: 1, radial_coeff },
    ];
    for k in 1..=k_max {
        let (lo, hi) = delta_pair(n, a, k)?;
        let multiplicity = harmonic_dim(n, k)?;
        for (branch, value) in [(Branch::Lower, lo), (Branch::Upper, hi)] {
            entries.push(SpectrumEntry {
                k,
                branch,
                value,
                multiplicity,
                radial_coeff: branch_coeff(n, a, k, branch, value),
            });
        }
    }
    entries.sort_by(|x, y| {
        x.value
            .total_cmp(&y.value)
            .then(x.k.cmp(&y.k))
            .then(x.branch.rank().cmp(&y.branch.rank()))
    });
    Ok(entries)
}

/// Every eigenvalue below this value is listed by `spectrum(n, a, k_max)`.
///
/// Lower roots increase with `k`, and each upper root exceeds its lower
/// root, so the first missing value is the lower root at `k_max + 1`.
pub fn coverage_limit(n: usize, a: f64, k_max: usize) -> Result<f64> {
    Ok(delta_pair(n, a, k_max + 1)?.0)
}

fn branch_value(n: usize, a: f64, k: usize, branch: Branch) -> Result<f64> {
    match (branch, k) {
        (Branch::Zero, 0) => Ok(0.0),
        (Branch::Radial0, 0) => delta0(n, a),
        (Branch::Lower, k) if k >= 1 => Ok(delta_pair(n, a, k)?.0),
        (Branch::Upper, k) if k >= 1 => Ok(delta_pair(n, a, k)?.1),
        _ => Err(Error::domain(format!("branch {branch} does not exist at k = {k}"))),
    }
}

fn check_radius(a: f64, r: f64) -> Result<()> {
    if !(r >= a && r <= 1.0) {
        return Err(Error::domain("radius must lie in [a, 1]"));
    }
    Ok(())
}

/// Radial profile `α(r)` of the eigenfunction on `branch` at order `k`.
pub fn eigenfunction_radial(n: usize, a: f64, k: usize, branch: Branch, r: f64) -> Result<f64> {
    check_shell(n, a)?;
    check_radius(a, r)?;
    let delta = branch_value(n, a, k, branch)?;
    Ok(match branch {
        Branch::Zero => 1.0,
        Branch::Radial0 if n == 2 => 1.0 + delta * r.ln(),
        Branch::Radial0 => (2.0 - n as f64 - delta) + delta * r.powi(2 - n as i32),
        Branch::Lower | Branch::Upper => {
            let q = branch_coeff(n, a, k, branch, delta);
            r.powi(k as i32) + q * r.powi(-((k + n - 2) as i32))
        }
    })
}

/// `α'(r)` for the same profile.
pub fn eigenfunction_radial_deriv(
    n: usize,
    a: f64,
    k: usize,
    branch: Branch,
    r: f64,
) -> Result<f64> {
    check_shell(n, a)?;
    check_radius(a, r)?;
    let delta = branch_value(n, a, k, branch)?;
    let nf = n as f64;
    Ok(match branch {
        Branch::Zero => 0.0,
        Branch::Radial0 if n == 2 => delta / r,
        Branch::Radial0 => delta * (2.0 - nf) * r.powi(1 - n as i32),
        Branch::Lower | Branch::Upper => {
            let q = branch_coeff(n, a, k, branch, delta);
            let m = (k + n - 2) as i32;
            k as f64 * r.powi(k as i32 - 1) - m as f64 * q * r.powi(-m - 1)
        }
    })
}

/// `P^{1/(n-1)} σ₁` for `B \ εB̄`, where `P` is the boundary measure.
/// At `ε = 0` this is the ball's value `|S^{n-1}|^{1/(n-1)}`.
pub fn scale_invariant(n: usize, eps: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::domain("hole ratio must lie in [0,1)"));
    }
    let perimeter = sphere_area(n - 1) * (1.0 + eps.powi(n as i32 - 1));
    let sigma = if eps == 0.0 { 1.0 } else { sigma1_closed_form(n, eps)? };
    Ok(perimeter.powf(1.0 / (n - 1) as f64) * sigma)
}

/// `[F(ε) - F(0)] / (F(0) ε^{n-1})` with `F` = [`scale_invariant`]; tends
/// to `1/(n-1)` as `ε → 0` for `n ≥ 3`.
pub fn normalized_increment(n: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::domain("hole ratio must be positive"));
    }
    let base = scale_invariant(n, 0.0)?;
    Ok((scale_invariant(n, eps)? - base) / (base * eps.powi(n as i32 - 1)))
}

const SCAN_POINTS: usize = 400;
const GOLDEN_TOL: f64 = 1e-10;

/// Maximizer of [`scale_invariant`] over `ε ∈ (0, 1)`.
///
/// A coarse scan brackets the maximum and checks that the samples rise then
/// fall; a golden-section search then narrows the bracket below `1e-10`.
pub fn optimal_eps(n: usize) -> Result<(f64, f64)> {
    let f = |e: f64| scale_invariant(n, e);
    let base = f(0.0)?;
    let grid: Vec<f64> = (1..SCAN_POINTS).map(|i| i as f64 / SCAN_POINTS as f64).collect();
    let values = grid.iter().map(|&e| f(e)).collect::<Result<Vec<_>>>()?;
    let best = values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .expect("scan grid is non-empty");
    let noise = 1e-13 * values[best].abs();
    let rises = values[..=best].windows(2).all(|w| w[1] >= w[0] - noise);
    let falls = values[best..].windows(2).all(|w| w[1] <= w[0] + noise);
    if !(rises && falls) {
        return Err(Error::SearchFailure(format!(
            "scale invariant is not unimodal on the scan grid for n = {n}"
        )));
    }
    if best == 0 || best == grid.len() - 1 {
        return Err(Error::SearchFailure(format!(
            "maximum sits on the scan boundary for n = {n}"
        )));
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (grid[best - 1], grid[best + 1]);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let eps = 0.5 * (lo + hi);
    let value = f(eps)?;
    if !(value > base) {
        return Err(Error::SearchFailure(format!(
            "maximum {value} does not exceed the ball value {base}"
        )));
    }
    Ok((eps, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn a_grid() -> impl Iterator<Item = f64> {
        (1..=19).map(|i| 0.05 * i as f64)
    }

    /// Lower root located by bisection on the polynomial itself.
    fn bisect_lower(n: usize, a: f64, k: usize) -> f64 {
        let q = quadratic_coeffs(n, a, k).unwrap();
        let p = |x: f64| (q.a * x + q.b) * x + q.c;
        let vertex = -q.b / (2.0 * q.a);
        let (mut lo, mut hi) = (0.0, vertex);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn coefficient_anchor() {
        let q = quadratic_coeffs(2, 0.5, 1).unwrap();
        assert_relative_eq!(q.a, 0.375, max_relative = 1e-15);
        assert_relative_eq!(q.c, 0.75, max_relative = 1e-15);
        let q = quadratic_coeffs(3, 0.4, 2).unwrap();
        assert!(q.discriminant > 4.84);
        assert!(quadratic_coeffs(3, 0.4, 0).is_err());
        assert!(quadratic_coeffs(3, 1.0, 2).is_err());
    }

    #[test]
    fn planar_first_eigenvalue() {
        let s = sigma1_closed_form(2, 0.5).unwrap();
        assert_relative_eq!(s, 0.438447187191170, max_relative = 1e-13);
        assert_relative_eq!(s, bisect_lower(2, 0.5, 1), max_relative = 1e-12);
        assert_relative_eq!(mu_sigma(2, 0.5).unwrap(), (1.0 - s) / (1.0 + s), max_relative = 1e-15);
        assert_relative_eq!(sigma1_closed_form(2, 0.2).unwrap(), 0.891504716985, max_relative = 1e-11);
        assert_relative_eq!(sigma1_closed_form(2, 0.8).unwrap(), 0.123437744064, max_relative = 1e-11);
    }

    #[test]
    fn delta0_anchors() {
        assert_relative_eq!(delta0(2, 0.5).unwrap(), 1.5 / (0.5 * 2f64.ln()), max_relative = 1e-15);
        assert_relative_eq!(delta0(3, 0.5).unwrap(), 5.0, max_relative = 1e-15);
    }

    #[test]
    fn small_hole_limit() {
        for n in 2..=6 {
            let s = sigma1_closed_form(n, 1e-6).unwrap();
            assert!(s <= 1.0 && (1.0 - s) < 1e-4, "n={n}: {s}");
        }
    }

    #[test]
    fn closed_form_matches_root_on_grid() {
        for n in 2..=6 {
            for a in a_grid() {
                let s = sigma1_closed_form(n, a).unwrap();
                let (lo, _) = delta_pair(n, a, 1).unwrap();
                assert!(((s - lo) / s).abs() < 1e-12, "n={n} a={a}");
                assert!(((s - bisect_lower(n, a, 1)) / s).abs() < 1e-12, "n={n} a={a}");
                assert!(s < 1.0 && s > 0.0);
            }
        }
    }

    #[test]
    fn monotone_lower_branch_and_radial_gap() {
        for n in 2..=6 {
            for a in a_grid() {
                let lowers: Vec<f64> = (1..=50).map(|k| delta_pair(n, a, k).unwrap().0).collect();
                assert!(lowers.windows(2).all(|w| w[1] > w[0]), "n={n} a={a}");
                assert!(sigma1_closed_form(n, a).unwrap() < delta0(n, a).unwrap());
            }
        }
    }

    #[test]
    fn discriminant_and_vieta() {
        for n in 2..=6 {
            for a in a_grid() {
                for k in 1..=20 {
                    let q = quadratic_coeffs(n, a, k).unwrap();
                    let floor = ((k + n - 2) as f64 - k as f64 * a).powi(2);
                    assert!(q.discriminant >= floor * (1.0 - 1e-12), "n={n} a={a} k={k}");
                    let (lo, hi) = delta_pair(n, a, k).unwrap();
                    assert!(0.0 < lo && lo < hi);
                    assert_relative_eq!(lo + hi, -q.b / q.a, max_relative = 1e-11);
                    assert_relative_eq!(lo * hi, q.c / q.a, max_relative = 1e-11);
                }
            }
        }
    }

    #[test]
    fn spectrum_layout() {
        let entries = spectrum(2, 0.5, 3).unwrap();
        assert_eq!(entries.len(), 2 + 2 * 3);
        assert_eq!(entries[0].branch, Branch::Zero);
        assert_eq!(entries[0].value, 0.0);
        assert_eq!(entries[0].multiplicity, 1);
        assert_eq!((entries[1].k, entries[1].branch, entries[1].multiplicity), (1, Branch::Lower, 2));
        assert_relative_eq!(entries[1].value, sigma1_closed_form(2, 0.5).unwrap());
        assert_relative_eq!(entries[1].radial_coeff, mu_sigma(2, 0.5).unwrap(), max_relative = 1e-14);
        assert!(entries.windows(2).all(|w| w[0].value <= w[1].value));
        for n in 3..=5 {
            let entries = spectrum(n, 0.3, 10).unwrap();
            assert_eq!((entries[1].k, entries[1].branch), (1, Branch::Lower));
            assert_eq!(entries[1].multiplicity, n as u64);
        }
        assert!(spectrum(2, 0.5, 0).is_err());
        assert!(coverage_limit(2, 0.5, 3).unwrap() > entries[1].value);
    }

    #[test]
    fn first_eigenfunction_profile() {
        let mu = mu_sigma(3, 0.4).unwrap();
        for r in [0.4, 0.55, 0.8, 1.0] {
            let alpha = eigenfunction_radial(3, 0.4, 1, Branch::Lower, r).unwrap();
            assert_relative_eq!(alpha, r + mu / (r * r), max_relative = 1e-14);
        }
        let d0 = delta0(2, 0.5).unwrap();
        let v = eigenfunction_radial(2, 0.5, 0, Branch::Radial0, 0.7).unwrap();
        assert_relative_eq!(v, 1.0 + d0 * 0.7f64.ln(), max_relative = 1e-15);
        assert!(eigenfunction_radial(2, 0.5, 1, Branch::Lower, 0.3).is_err());
        assert!(eigenfunction_radial(2, 0.5, 1, Branch::Radial0, 0.7).is_err());
    }

    #[test]
    fn boundary_conditions_hold() {
        for n in 2..=5 {
            for a in [0.2, 0.5, 0.8] {
                let mut cases = vec![(0, Branch::Zero), (0, Branch::Radial0)];
                for k in 1..=20 {
                    cases.push((k, Branch::Lower));
                    cases.push((k, Branch::Upper));
                }
                for (k, branch) in cases {
                    let delta = branch_value(n, a, k, branch).unwrap();
                    // Defect relative to the size of the two terms being balanced.
                    let defect = |r: f64, sign: f64| {
                        let du = eigenfunction_radial_deriv(n, a, k, branch, r).unwrap();
                        let u = eigenfunction_radial(n, a, k, branch, r).unwrap();
                        (du + sign * delta * u).abs() / (1.0 + du.abs() + delta * u.abs())
                    };
                    let (outer, inner) = (defect(1.0, -1.0), defect(a, 1.0));
                    assert!(outer < 1e-10, "n={n} a={a} k={k} {branch}: {outer}");
                    assert!(inner < 1e-10, "n={n} a={a} k={k} {branch}: {inner}");
                }
            }
        }
    }

    #[test]
    fn scale_invariant_values() {
        assert_relative_eq!(scale_invariant(2, 0.0).unwrap(), 2.0 * std::f64::consts::PI);
        let v = scale_invariant(3, 0.5).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(scale_invariant(3, 1.0).is_err());
        for n in [3, 4] {
            let f0 = scale_invariant(n, 0.0).unwrap();
            let eps: f64 = 1e-3;
            let slope = (scale_invariant(n, eps).unwrap() - f0) / (f0 * eps.powi(n as i32 - 1));
            let target = 1.0 / (n - 1) as f64;
            assert!(((slope - target) / target).abs() < 5e-3, "n={n}: {slope}");
        }
    }

    #[test]
    fn optimal_ratio_matches_grid() {
        for n in 2..=4 {
            let (eps, value) = optimal_eps(n).unwrap();
            assert!(eps > 0.0 && eps < 1.0);
            assert!(value > scale_invariant(n, 0.0).unwrap());
            let grid_best = (1..10_000)
                .map(|i| i as f64 / 10_000.0)
                .max_by(|x, y| {
                    scale_invariant(n, *x).unwrap().total_cmp(&scale_invariant(n, *y).unwrap())
                })
                .unwrap();
            assert!((eps - grid_best).abs() < 1e-4, "n={n}: {eps} vs {grid_best}");
        }
    }

    proptest! {
        #[test]
        fn roots_positive_and_ordered(n in 2usize..9, a in 0.01..0.99f64, k in 1usize..40) {
            let (lo, hi) = delta_pair(n, a, k).unwrap();
            prop_assert!(lo > 0.0 && lo < hi);
        }

        #[test]
        fn mu_in_range(n in 2usize..9, a in 0.01..0.99f64) {
            let mu = mu_sigma(n, a).unwrap();
            prop_assert!(mu > 0.0 && mu < 1.0 / (n - 1) as f64);
        }
    }
}
