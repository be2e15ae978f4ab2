//! Wallis integrals, spherical-harmonic counts and the series identities
//! behind the planar logarithmic integral.
//!
//! `I_p = ∫₀^π sin^p t dt` is built by the forward recursion
//! `I_{p+2} = (p+1)/(p+2) · I_p` from `I_0 = π`, `I_1 = 2`, so large `p`
//! never touches a factorial.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative size of the last accepted term at which a series is cut.
const SERIES_REL_CUTOFF: f64 = 1e-16;
/// Hard cap on the number of series terms.
const SERIES_MAX_TERMS: usize = 100_000;

/// Immutable table of `I_0 ..= I_max_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallisTable {
    values: Vec<f64>,
}

impl WallisTable {
    pub fn new(max_p: usize) -> Self {
        let mut values = Vec::with_capacity(max_p + 1);
        values.push(PI);
        if max_p >= 1 {
            values.push(2.0);
        }
        for p in 2..=max_p {
            let prev = values[p - 2];
            values.push(prev * (p - 1) as f64 / p as f64);
        }
        Self { values }
    }

    pub fn max_p(&self) -> usize {
        self.values.len() - 1
    }

    /// `I_p`, or `None` past the end of the table.
    pub fn get(&self, p: usize) -> Option<f64> {
        self.values.get(p).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `I_p = ∫₀^π sin^p t dt`.
pub fn wallis(p: usize) -> f64 {
    // Only the parity chain matters; walk it directly instead of tabulating.
    let (mut value, mut q) = if p.is_multiple_of(2) { (PI, 0) } else { (2.0, 1) };
    while q < p {
        value *= (q + 1) as f64 / (q + 2) as f64;
        q += 2;
    }
    value
}

/// `∏_{k=lo}^{hi} I_k`, with the empty product (hi < lo) equal to 1.
pub fn wallis_product(lo: usize, hi: isize) -> f64 {
    if hi < lo as isize {
        return 1.0;
    }
    (lo..=hi as usize).map(wallis).product()
}

/// Surface measure of the unit sphere `S^m ⊂ R^{m+1}`.
///
/// Written as `2 ∏_{k=0}^{m-1} I_k`, the form in which it appears in the
/// shell integrals (`S^0` is two points, measure 2).
pub fn sphere_area(m: usize) -> f64 {
    2.0 * wallis_product(0, m as isize - 1)
}

fn binomial(m: i64, j: i64) -> u128 {
    if j < 0 || m < j {
        return 0;
    }
    let j = j.min(m - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        // acc == C(m, i) here, so the division is exact.
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Dimension of the space of degree-`k` spherical harmonics in `n`
/// variables: `C(n+k-1, n-1) - C(n+k-3, n-1)`.
pub fn harmonic_dim(n: usize, k: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    let (n, k) = (n as i64, k as i64);
    let dim = binomial(n + k - 1, n - 1) - binomial(n + k - 3, n - 1);
    u64::try_from(dim).map_err(|_| Error::domain("harmonic dimension overflows u64"))
}

/// Sums `term(1) + term(2) + ...` until a term drops below
/// `SERIES_REL_CUTOFF` times the running sum.
fn sum_series(what: &'static str, mut term: impl FnMut(usize) -> f64) -> Result<f64> {
    let mut sum = 0.0;
    for j in 1..=SERIES_MAX_TERMS {
        let t = term(j);
        sum += t;
        if t.abs() <= SERIES_REL_CUTOFF * sum.abs() || t == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what,
        detail: format!("term cap {SERIES_MAX_TERMS} reached"),
    })
}

/// `Σ_{j≥1} (1/j) C(2j, j) x^j`, defined for `|x| < 1/4`.
///
/// Closed form `2 ln(2 / (1 + √(1-4x)))`.
pub fn catalan_series(x: f64) -> Result<f64> {
    if !(x.abs() < 0.25) {
        return Err(Error::domain("catalan series requires |x| < 1/4"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // c_j = C(2j, j) x^j, c_{j+1} = c_j * 2(2j+1)/(j+1) * x
    let mut central = 1.0;
    sum_series("catalan series", |j| {
        central *= 2.0 * (2 * j - 1) as f64 / j as f64 * x;
        central / j as f64
    })
}

/// `Σ_{j≥0} I_{2j} x^{2j}`, defined for `|x| < 1`; equals `π/√(1-x²)`.
pub fn wallis_even_series(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain("Wallis generating series requires |x| < 1"));
    }
    let x2 = x * x;
    let mut term = PI;
    let tail = sum_series("Wallis generating series", |j| {
        // I_{2j} = I_{2j-2} (2j-1)/(2j)
        term *= (2 * j - 1) as f64 / (2 * j) as f64 * x2;
        term
    })?;
    Ok(PI + tail)
}

/// `Σ_{j≥1} (1/j) I_{2j} (2d/(1+d²))^{2j}`, defined for `0 ≤ d < 1`.
///
/// Equals `2π ln(1+d²)`; together with the Fourier expansion of
/// `ln(1 + 2d cos t/(1+d²))` this is what makes
/// `∫₀^{2π} ln(1+d²+2d cos t) dt` vanish.
pub fn log_series_identity(d: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&d) {
        return Err(Error::domain("log series identity requires 0 <= d < 1"));
    }
    if d == 0.0 {
        return Ok(0.0);
    }
    let x = 2.0 * d / (1.0 + d * d);
    let x2 = x * x;
    let mut wallis_term = PI;
    sum_series("log series identity", |j| {
        wallis_term *= (2 * j - 1) as f64 / (2 * j) as f64 * x2;
        wallis_term / j as f64
    })
}
