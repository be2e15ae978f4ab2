//! Rayleigh-quotient upper bounds on eccentric shells.
//!
//! The Steklov bound uses the concentric first eigenfunction
//! `f(x) = x_{n-1}(1 + μ|x|^{-n})` as a test function on `Ω_d`. After
//! integrating out every angle except `θ` (measured from the offset axis)
//! the energy and boundary mass reduce to six one-dimensional integrals:
//!
//! ```text
//! W1 = ∫ sin^{n-2}θ (Rⁿ - aⁿ)          V1 = ∫ sinⁿθ Rⁿ √(R² + R'²)
//! W2 = ∫ φ_n(θ) ln(R/a)                 V2 = ∫ sinⁿθ d cos θ / √(1 - d² sin²θ)
//! W3 = ∫ ψ_n(θ) (R^{-n} - a^{-n})       V3 = ∫ sinⁿθ / (R^{n-1} √(1 - d² sin²θ))
//! ```
//!
//! all over `[0, π]` with `R = R_d(θ)`. `W1`, `V1` do not depend on `d`,
//! `W2` and `V2` vanish, and `W3`, `V3` increase with `d`, which is why the
//! bound decreases as the hole moves off centre.
//!
//! The Dirichlet–Steklov bound uses `g = ln(r/a)` (plane) or
//! `a^{2-n} - r^{2-n}`, which vanishes on the hole.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    arc_factor_raw, phi_raw, psi_raw, radius_raw, root_term, sin_pow, ShellConfig,
};
use crate::quadrature::{integrate_value, Tolerance};
use crate::shell_spectrum::mu_sigma;
use crate::special_fn::{wallis, wallis_product};

/// Every intermediate quantity of the Steklov bound at one offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighBreakdown {
    pub cfg: ShellConfig,
    pub mu: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub i_n: f64,
    /// `∫ f²` over the inner sphere; the same for every offset.
    pub inner_mass: f64,
    /// `∫ f²` over the outer sphere.
    pub outer_mass: f64,
    pub energy: f64,
    pub boundary_mass: f64,
    pub bound: f64,
}

/// Energy, outer-boundary mass and quotient of the Dirichlet–Steklov test
/// function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DsBreakdown {
    pub cfg: ShellConfig,
    pub energy: f64,
    pub boundary_mass: f64,
    pub bound: f64,
}

/// Quadrature-backed evaluator; the free functions use the default tolerance.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Rayleigh {
    pub tol: Tolerance,
}

/// `|S^{n-2}| = 2 ∏_{k=0}^{n-3} I_k`, the measure of the remaining angles in
/// the energy integrals.
fn energy_constant(n: usize) -> f64 {
    2.0 * wallis_product(0, n as isize - 3)
}

/// `2 ∏_{k=2}^{n-1} I_k`: the remaining angular integral of `x_{n-1}²/r²`
/// with the `sinⁿθ` factor split off.
fn mass_constant(n: usize) -> f64 {
    2.0 * wallis_product(2, n as isize - 1)
}

impl Rayleigh {
    pub fn new(tol: Tolerance) -> Self {
        Self { tol }
    }

    fn quad(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        integrate_value(f, 0.0, PI, self.tol)
    }

    pub fn w1(&self, cfg: &ShellConfig) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        let an = a.powi(n as i32);
        self.quad(|t| sin_pow(t, n - 2) * (radius_raw(d, t).powi(n as i32) - an))
    }

    pub fn w2(&self, cfg: &ShellConfig) -> Result<f64> {
        self.w2_signed(cfg, 1.0)
    }

    /// `W2` with the sign of the `-n sinⁿθ` part of `φ_n` multiplied by
    /// `sign`; `sign = -1` is a deliberately broken variant for self-tests.
    pub(crate) fn w2_signed(&self, cfg: &ShellConfig, sign: f64) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        self.quad(|t| {
            let weight = phi_raw(n, t) + (1.0 - sign) * n as f64 * sin_pow(t, n);
            weight * (radius_raw(d, t) / a).ln()
        })
    }

    pub fn w3(&self, cfg: &ShellConfig) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        let inv = a.powi(-(n as i32));
        self.quad(|t| psi_raw(n, t) * (radius_raw(d, t).powi(-(n as i32)) - inv))
    }

    /// `∫ sin^p θ R^p √(R² + R'²)`.
    pub fn v1_exp(&self, d: f64, p: usize) -> Result<f64> {
        self.quad(|t| sin_pow(t, p) * radius_raw(d, t).powi(p as i32) * arc_factor_raw(d, t))
    }

    /// `∫ sin^p θ d cos θ / √(1 - d² sin²θ)`.
    pub fn v2_exp(&self, d: f64, p: usize) -> Result<f64> {
        self.quad(|t| sin_pow(t, p) * d * t.cos() / root_term(d, t))
    }

    /// `∫ sin^p θ / (R^{p-1} √(1 - d² sin²θ))`.
    pub fn v3_exp(&self, d: f64, p: usize) -> Result<f64> {
        self.quad(|t| sin_pow(t, p) / (radius_raw(d, t).powi(p as i32 - 1) * root_term(d, t)))
    }

    pub fn v1(&self, cfg: &ShellConfig) -> Result<f64> {
        self.v1_exp(cfg.d, cfg.n)
    }

    pub fn v2(&self, cfg: &ShellConfig) -> Result<f64> {
        self.v2_exp(cfg.d, cfg.n)
    }

    pub fn v3(&self, cfg: &ShellConfig) -> Result<f64> {
        self.v3_exp(cfg.d, cfg.n)
    }

    /// `G(d) = ∫ ψ_n ((1 + d cos θ)^{-n} - a^{-n})`, a lower comparator for `W3`.
    pub fn g_comparator(&self, cfg: &ShellConfig) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        let inv = a.powi(-(n as i32));
        self.quad(|t| psi_raw(n, t) * ((1.0 + d * t.cos()).powi(-(n as i32)) - inv))
    }

    /// `H(d) = ∫ sinⁿθ (1 + d cos θ)^{-(n-1)}`, a lower comparator for `V3`.
    pub fn h_comparator(&self, cfg: &ShellConfig) -> Result<f64> {
        let (n, d) = (cfg.n, cfg.d);
        self.quad(|t| sin_pow(t, n) * (1.0 + d * t.cos()).powi(1 - n as i32))
    }

    pub fn steklov_bound(&self, cfg: &ShellConfig) -> Result<RayleighBreakdown> {
        let (n, a) = (cfg.n, cfg.a);
        let nf = n as f64;
        let mu = mu_sigma(n, a)?;
        let (w1, w2, w3) = (self.w1(cfg)?, self.w2(cfg)?, self.w3(cfg)?);
        let (v1, v2, v3) = (self.v1(cfg)?, self.v2(cfg)?, self.v3(cfg)?);
        let i_n = wallis(n);

        let energy = energy_constant(n) / (nf - 1.0)
            * ((nf - 1.0) / nf * w1 + 2.0 * mu * w2 - mu * mu / nf * w3);
        let c_v = mass_constant(n);
        let outer_mass = c_v * (v1 + 2.0 * mu * (i_n + v2) + mu * mu * v3);
        let inner_mass = c_v * i_n * a.powi(n as i32 - 1) * (a + mu * a.powi(1 - n as i32)).powi(2);
        let boundary_mass = outer_mass + inner_mass;

        Ok(RayleighBreakdown {
            cfg: *cfg,
            mu,
            w1,
            w2,
            w3,
            v1,
            v2,
            v3,
            i_n,
            inner_mass,
            outer_mass,
            energy,
            boundary_mass,
            bound: energy / boundary_mass,
        })
    }

    /// `∫_{Ω_d} |∇g|²`; the radial integral is done in closed form.
    pub fn ds_energy(&self, cfg: &ShellConfig) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        let c = energy_constant(n);
        if n == 2 {
            return Ok(c * self.quad(|t| (radius_raw(d, t) / a).ln())?);
        }
        let (nm2, e) = ((n - 2) as f64, 2 - n as i32);
        let inner = a.powi(e);
        Ok(c * self.quad(|t| sin_pow(t, n - 2) * nm2 * (inner - radius_raw(d, t).powi(e)))?)
    }

    /// `∫ g²` over the outer sphere (`g` vanishes on the hole).
    pub fn ds_boundary_mass(&self, cfg: &ShellConfig) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        if n == 2 {
            // Outer circle y_d + (cos t, sin t), where |x|² = 1 + d² + 2d cos t.
            let ln_a = a.ln();
            let f = |t: f64| {
                let v = 0.5 * (1.0 + d * d + 2.0 * d * t.cos()).ln() - ln_a;
                v * v
            };
            return integrate_value(f, 0.0, 2.0 * PI, self.tol);
        }
        let p = n - 2;
        let inv = a.powi(2 - n as i32);
        let (v1, v2, v3) = (self.v1_exp(d, p)?, self.v2_exp(d, p)?, self.v3_exp(d, p)?);
        Ok(energy_constant(n) * (inv * inv * v1 - 2.0 * inv * (wallis(p) + v2) + v3))
    }

    pub fn ds_breakdown(&self, cfg: &ShellConfig) -> Result<DsBreakdown> {
        let energy = self.ds_energy(cfg)?;
        let boundary_mass = self.ds_boundary_mass(cfg)?;
        Ok(DsBreakdown { cfg: *cfg, energy, boundary_mass, bound: energy / boundary_mass })
    }

    pub fn ds_bound(&self, cfg: &ShellConfig) -> Result<f64> {
        Ok(self.ds_breakdown(cfg)?.bound)
    }

    /// `∫_{∂Ω_d} u^i dσ` for the concentric eigenfunction
    /// `u^i = x_i (1 + μ|x|^{-n})`, axes numbered from 1 with axis `n` the
    /// offset direction.
    ///
    /// The inner sphere contributes nothing by antipodal symmetry. For
    /// `i < n` the outer integral carries the factor `∫₀^π cos φ sin^{n-3} φ`
    /// over the second polar angle (every such axis is a rotation of axis
    /// `n-1` about the offset axis), which is zero; for `i = n` it is
    /// generally nonzero once `d > 0`.
    pub fn test_function_orthogonality(&self, cfg: &ShellConfig, i: usize) -> Result<f64> {
        let (n, a, d) = (cfg.n, cfg.a, cfg.d);
        if i == 0 || i > n {
            return Err(Error::domain(format!("axis index must lie in 1..={n}")));
        }
        let mu = mu_sigma(n, a)?;
        let radial = |t: f64| {
            let r = radius_raw(d, t);
            r * (1.0 + mu * r.powi(-(n as i32))) * r.powi(n as i32 - 2) * arc_factor_raw(d, t)
        };
        if n == 2 {
            // Full circle; θ from the offset axis, x_1 = r sin θ.
            let f = |t: f64| radial(t) * if i == 1 { t.sin() } else { t.cos() };
            return integrate_value(f, 0.0, 2.0 * PI, self.tol);
        }
        let rest = 2.0 * wallis_product(0, n as isize - 4);
        if i == n {
            let polar = self.quad(|t| radial(t) * sin_pow(t, n - 2) * t.cos())?;
            return Ok(energy_constant(n) * polar);
        }
        let polar = self.quad(|t| radial(t) * sin_pow(t, n - 1))?;
        let second = self.quad(|p| p.cos() * sin_pow(p, n - 3))?;
        Ok(rest * polar * second)
    }
}

pub fn w1(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().w1(cfg)
}

pub fn w2(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().w2(cfg)
}

pub fn w3(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().w3(cfg)
}

pub fn v1(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().v1(cfg)
}

pub fn v2(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().v2(cfg)
}

pub fn v3(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().v3(cfg)
}

pub fn g_comparator(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().g_comparator(cfg)
}

pub fn h_comparator(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().h_comparator(cfg)
}

/// Upper bound on `σ₁(Ω_d)` with all intermediate integrals.
pub fn steklov_bound(cfg: &ShellConfig) -> Result<RayleighBreakdown> {
    Rayleigh::default().steklov_bound(cfg)
}

pub fn ds_energy(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().ds_energy(cfg)
}

pub fn ds_boundary_mass(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().ds_boundary_mass(cfg)
}

/// Upper bound on the first Dirichlet–Steklov eigenvalue `τ₁(Ω_d)`.
pub fn ds_bound(cfg: &ShellConfig) -> Result<f64> {
    Rayleigh::default().ds_bound(cfg)
}

pub fn test_function_orthogonality(cfg: &ShellConfig, i: usize) -> Result<f64> {
    Rayleigh::default().test_function_orthogonality(cfg, i)
}

/// `τ₁` of the concentric shell: `1/ln(1/a)` in the plane,
/// `(n-2)/(a^{2-n} - 1)` otherwise.
pub fn tau1_concentric(n: usize, a: f64) -> Result<f64> {
    ShellConfig::new(n, a, 0.0)?;
    if n == 2 {
        return Ok(1.0 / (1.0 / a).ln());
    }
    Ok((n - 2) as f64 / (a.powi(2 - n as i32) - 1.0))
}
