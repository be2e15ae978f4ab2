//! The eccentric shell `Ω_d = (y_d + B) \ aB̄` in polar form about the
//! centre of the hole.
//!
//! The outer sphere is offset by `d` along the last axis. Seen from the
//! origin, its boundary is the graph `r = R_d(θ)` where `θ` is the angle to
//! that axis; the law of cosines on the triangle (origin, outer centre,
//! boundary point) gives `R_d(θ) = d cos θ + √(1 - d² sin² θ)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dimension, inner radius and centre offset of an eccentric shell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellConfig {
    pub n: usize,
    pub a: f64,
    pub d: f64,
}

impl ShellConfig {
    pub fn new(n: usize, a: f64, d: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::domain("inner radius must lie in (0,1)"));
        }
        if !(d >= 0.0 && d < 1.0 - a) {
            return Err(Error::domain(format!(
                "offset must lie in [0, 1-a) = [0, {})",
                1.0 - a
            )));
        }
        Ok(Self { n, a, d })
    }

    /// Concentric shell with the same `n` and `a`.
    pub fn concentric(&self) -> Self {
        Self { d: 0.0, ..*self }
    }

    pub fn with_offset(&self, d: f64) -> Result<Self> {
        Self::new(self.n, self.a, d)
    }

    /// Largest admissible offset `1 - a` (excluded).
    pub fn max_offset(&self) -> f64 {
        1.0 - self.a
    }
}

fn check_offset(d: f64) -> Result<()> {
    if !(0.0..1.0).contains(&d) {
        return Err(Error::domain("offset must lie in [0, 1)"));
    }
    Ok(())
}

fn check_angle(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain("polar angle must lie in [0, pi]"));
    }
    Ok(())
}

/// `sin^p θ` with `sin⁰ θ = 1` everywhere, including the poles.
#[inline]
pub(crate) fn sin_pow(theta: f64, p: usize) -> f64 {
    if p == 0 {
        1.0
    } else {
        theta.sin().powi(p as i32)
    }
}

/// `√(1 - d² sin² θ)`.
#[inline]
pub(crate) fn root_term(d: f64, theta: f64) -> f64 {
    let s = d * theta.sin();
    (1.0 - s * s).sqrt()
}

#[inline]
pub(crate) fn radius_raw(d: f64, theta: f64) -> f64 {
    d * theta.cos() + root_term(d, theta)
}

#[inline]
pub(crate) fn radius_deriv_raw(d: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    -d * s - d * d * s * c / root_term(d, theta)
}

#[inline]
pub(crate) fn arc_factor_raw(d: f64, theta: f64) -> f64 {
    radius_raw(d, theta) / root_term(d, theta)
}

#[inline]
pub(crate) fn phi_raw(n: usize, theta: f64) -> f64 {
    -(n as f64) * sin_pow(theta, n) + (n - 1) as f64 * sin_pow(theta, n - 2)
}

#[inline]
pub(crate) fn psi_raw(n: usize, theta: f64) -> f64 {
    (n * (n - 2)) as f64 * sin_pow(theta, n) + (n - 1) as f64 * sin_pow(theta, n - 2)
}

/// Distance `R_d(θ)` from the origin to the outer sphere in direction `θ`.
pub fn radius(d: f64, theta: f64) -> Result<f64> {
    check_offset(d)?;
    check_angle(theta)?;
    Ok(radius_raw(d, theta))
}

/// `R_d'(θ)`.
pub fn radius_deriv(d: f64, theta: f64) -> Result<f64> {
    check_offset(d)?;
    check_angle(theta)?;
    Ok(radius_deriv_raw(d, theta))
}

/// Boundary measure density `√(R² + R'²) = R / √(1 - d² sin² θ)`.
pub fn arc_factor(d: f64, theta: f64) -> Result<f64> {
    check_offset(d)?;
    check_angle(theta)?;
    Ok(arc_factor_raw(d, theta))
}

fn check_weight_args(n: usize, theta: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    check_angle(theta)
}

/// `φ_n(θ) = -n sinⁿθ + (n-1) sin^{n-2}θ`.
pub fn phi_weight(n: usize, theta: f64) -> Result<f64> {
    check_weight_args(n, theta)?;
    Ok(phi_raw(n, theta))
}

/// `ψ_n(θ) = n(n-2) sinⁿθ + (n-1) sin^{n-2}θ`, nonnegative.
pub fn psi_weight(n: usize, theta: f64) -> Result<f64> {
    check_weight_args(n, theta)?;
    Ok(psi_raw(n, theta))
}
