//! Self-check suite run by `steklov-shell verify`.
//!
//! Every check reduces an invariant to one measured number compared against
//! a tolerance, so the report is one line per invariant. Checks run in
//! parallel but the report order is fixed.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::eigensolver::{self, Problem, DEFAULT_ORDER, DEFAULT_POINTS};
use crate::error::Result;
use crate::geometry::{arc_factor, radius, ShellConfig};
use crate::oracle;
use crate::quadrature::{integrate_value, Tolerance};
use crate::rayleigh::{tau1_concentric, Rayleigh};
use crate::report::{fmt_num, Table};
use crate::shell_spectrum::{
    self, delta0, delta_pair, eigenfunction_radial, eigenfunction_radial_deriv, normalized_increment,
    optimal_eps, quadratic_coeffs, scale_invariant, sigma1_closed_form, Branch,
};
use crate::special_fn::{
    catalan_series, harmonic_dim, log_series_identity, sphere_area, wallis, wallis_even_series,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

/// Deliberate defects for testing the suite itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the `-n sinⁿθ` term inside `W2`.
    FlipW2Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    Below,
    AtLeast,
    Above,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Below => "<",
            Relation::AtLeast => ">=",
            Relation::Above => ">",
        }
    }

    fn holds(self, measured: f64, tol: f64) -> bool {
        match self {
            Relation::AtMost => measured <= tol,
            Relation::Below => measured < tol,
            Relation::AtLeast => measured >= tol,
            Relation::Above => measured > tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub relation: Relation,
    pub tolerance: f64,
    /// Set when computing the measurement itself failed.
    pub error: Option<String>,
}

impl Check {
    fn evaluate(name: &str, relation: Relation, tolerance: f64, measured: Result<f64>) -> Self {
        match measured {
            Ok(m) => Self {
                name: name.to_string(),
                passed: !m.is_nan() && relation.holds(m, tolerance),
                measured: m,
                relation,
                tolerance,
                error: None,
            },
            Err(e) => Self {
                name: name.to_string(),
                passed: false,
                measured: f64::NAN,
                relation,
                tolerance,
                error: Some(e.to_string()),
            },
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed { "PASS" } else { "FAIL" }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub level: Level,
    pub fault: Option<Fault>,
    pub tol: Tolerance,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { level: Level::Fast, fault: None, tol: Tolerance::default() }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["name", "status", "measured", "relation", "tolerance"]);
        for c in &self.checks {
            t.push(vec![
                c.name.clone(),
                c.status().into(),
                fmt_num(c.measured),
                c.relation.symbol().into(),
                fmt_num(c.tolerance),
            ]);
        }
        for c in &self.checks {
            if let Some(e) = &c.error {
                t.note("error", format!("{}: {e}", c.name));
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        t.note("passed", format!("{passed}/{}", self.checks.len()));
        t
    }
}

type Measure = Box<dyn Fn(&Ctx) -> Result<f64> + Send + Sync>;

struct CheckDef {
    name: &'static str,
    relation: Relation,
    tolerance: f64,
    measure: Measure,
}

fn def(
    name: &'static str,
    relation: Relation,
    tolerance: f64,
    measure: impl Fn(&Ctx) -> Result<f64> + Send + Sync + 'static,
) -> CheckDef {
    CheckDef { name, relation, tolerance, measure: Box::new(measure) }
}

struct Ctx {
    ray: Rayleigh,
    w2_sign: f64,
}

const DIMS: [usize; 5] = [2, 3, 4, 5, 6];
const SOLVER_RADII: [f64; 3] = [0.2, 0.5, 0.8];

/// `a = 0.05, 0.10, ..., 0.95`.
fn radius_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 * 0.05).collect()
}

fn cfg(n: usize, a: f64, d: f64) -> Result<ShellConfig> {
    ShellConfig::new(n, a, d)
}

/// `steps` offsets evenly spaced over `[0, frac (1-a)]`.
pub fn offset_grid(a: f64, steps: usize, frac: f64) -> Vec<f64> {
    if steps <= 1 {
        return vec![0.0; steps];
    }
    (0..steps).map(|j| frac * (1.0 - a) * j as f64 / (steps - 1) as f64).collect()
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for v in values {
        let v = v?;
        best = if v.is_nan() { f64::NAN } else { best.max(v) };
    }
    Ok(best)
}

fn min_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    Ok(-max_of(values.into_iter().map(|v| v.map(|x| -x)))?)
}

/// Largest forward difference; negative iff the sequence strictly decreases.
fn max_step(values: &[f64]) -> f64 {
    values.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max)
}

fn identity_cases() -> Vec<(usize, f64, f64)> {
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        for a in [0.3, 0.5, 0.7] {
            for d in offset_grid(a, 11, 0.95).into_iter().skip(1) {
                out.push((n, a, d));
            }
        }
    }
    out
}

fn anchor_pairs() -> Vec<(usize, f64)> {
    DIMS.iter().flat_map(|&n| [0.2, 0.5, 0.8].map(|a| (n, a))).collect()
}

/// Offsets past which `W3`, `V3` must grow by a visible amount.
fn increments(
    ctx: &Ctx,
    f: impl Fn(&Rayleigh, &ShellConfig) -> Result<f64>,
) -> Result<f64> {
    let mut worst = f64::INFINITY;
    for n in [2, 3, 4] {
        for a in [0.3, 0.5, 0.7] {
            let ds = offset_grid(a, 11, 0.95);
            let vals = ds.iter().map(|&d| f(&ctx.ray, &cfg(n, a, d)?)).collect::<Result<Vec<_>>>()?;
            for j in 1..ds.len() {
                if ds[j - 1] >= 0.1 * (1.0 - a) {
                    worst = worst.min(vals[j] - vals[j - 1]);
                }
            }
        }
    }
    Ok(worst)
}

fn fast_checks() -> Vec<CheckDef> {
    use Relation::*;
    vec![
        def("special_fn.wallis_quadrature", AtMost, 1e-11, |_| {
            max_of((0..=30).map(|p| Ok((wallis(p) - oracle::wallis_quadrature(p)?).abs())))
        }),
        def("special_fn.sphere_area_recursion", AtMost, 1e-13, |_| {
            max_of((0..16).map(|m| {
                let r = oracle::sphere_area_recursive(m);
                Ok(((sphere_area(m) - r) / r).abs())
            }))
        }),
        def("special_fn.harmonic_dim_branching", AtMost, 0.0, |_| {
            // dim H_k(n+1) = Σ_{j≤k} dim H_j(n)
            let mut bad = 0;
            for n in 2..8 {
                for k in 0..14 {
                    let sum: u64 = (0..=k).map(|j| harmonic_dim(n, j)).sum::<Result<u64>>()?;
                    if sum != harmonic_dim(n + 1, k)? {
                        bad += 1;
                    }
                }
            }
            Ok(bad as f64)
        }),
        def("special_fn.catalan_closed_form", AtMost, 1e-10, |_| {
            max_of((1..=20).map(|j| {
                let x = 0.012 * j as f64;
                let closed = 2.0 * (2.0 / (1.0 + (1.0 - 4.0 * x).sqrt())).ln();
                Ok((catalan_series(x)? - closed).abs())
            }))
        }),
        def("special_fn.catalan_partial_sums", AtMost, 1e-10, |_| {
            max_of((1..=10).map(|j| {
                let x = 0.02 * j as f64;
                Ok((catalan_series(x)? - oracle::catalan_partial(x, 400)).abs())
            }))
        }),
        def("special_fn.wallis_even_closed_form", AtMost, 1e-10, |_| {
            max_of((1..=20).map(|j| {
                let x = 0.045 * j as f64;
                let closed = PI / (1.0 - x * x).sqrt();
                Ok(((wallis_even_series(x)? - closed) / closed).abs())
            }))
        }),
        def("special_fn.log_series_closed_form", AtMost, 1e-10, |_| {
            max_of((1..=20).map(|j| {
                let d = 0.045 * j as f64;
                Ok((log_series_identity(d)? - 2.0 * PI * (1.0 + d * d).ln()).abs())
            }))
        }),
        def("quadrature.planar_log_integral", AtMost, 1e-10, |_| {
            max_of((1..=9).map(|j| Ok(oracle::planar_log_integral(0.1 * j as f64)?.abs())))
        }),
        def("geometry.law_of_cosines", AtMost, 1e-13, |_| {
            let mut worst: f64 = 0.0;
            for d in [0.0, 0.2, 0.5, 0.9, 0.99] {
                for j in 0..=64 {
                    let t = PI * j as f64 / 64.0;
                    let r = radius(d, t)?;
                    worst = worst.max((r * r - 2.0 * d * r * t.cos() + d * d - 1.0).abs());
                }
            }
            Ok(worst)
        }),
        def("geometry.arc_length_identity", AtMost, 1e-7, |_| {
            let mut worst: f64 = 0.0;
            for d in [0.1, 0.4, 0.8] {
                for j in 1..64 {
                    let t = PI * j as f64 / 64.0;
                    let r = radius(d, t)?;
                    let dr = oracle::central_difference(|s| radius(d, s).unwrap_or(f64::NAN), t, 1e-5);
                    worst = worst.max((arc_factor(d, t)? - (r * r + dr * dr).sqrt()).abs());
                }
            }
            Ok(worst)
        }),
        def("geometry.phi_mean_zero", AtMost, 1e-12, |_| {
            max_of((2..=8).map(|n| {
                let f = |t: f64| crate::geometry::phi_raw(n, t);
                Ok(integrate_value(f, 0.0, PI, Tolerance::uniform(1e-14))?.abs())
            }))
        }),
        def("shell_spectrum.closed_form_vs_root", AtMost, 1e-12, |_| {
            let mut worst: f64 = 0.0;
            for n in DIMS {
                for a in radius_grid() {
                    let s = sigma1_closed_form(n, a)?;
                    let (lower, _) = delta_pair(n, a, 1)?;
                    worst = worst.max(((s - lower) / s).abs());
                    worst = worst.max(((s - oracle::lower_root_bisection(n, a, 1)?) / s).abs());
                }
            }
            Ok(worst)
        }),
        def("shell_spectrum.lower_branch_increasing", AtMost, 0.0, |_| {
            let mut bad = 0;
            for n in DIMS {
                for a in radius_grid() {
                    let lows = (1..=50).map(|k| Ok(delta_pair(n, a, k)?.0)).collect::<Result<Vec<_>>>()?;
                    bad += lows.windows(2).filter(|w| !(w[1] > w[0])).count();
                }
            }
            Ok(bad as f64)
        }),
        def("shell_spectrum.sigma1_below_delta0", AtMost, 0.0, |_| {
            let mut bad = 0;
            for n in DIMS {
                for a in radius_grid() {
                    if !(sigma1_closed_form(n, a)? < delta0(n, a)?) {
                        bad += 1;
                    }
                }
            }
            Ok(bad as f64)
        }),
        def("shell_spectrum.vieta_relations", AtMost, 1e-12, |_| {
            let mut worst: f64 = 0.0;
            for n in DIMS {
                for a in radius_grid() {
                    for k in [1, 2, 5, 20] {
                        let q = quadratic_coeffs(n, a, k)?;
                        if !(q.discriminant > 0.0) {
                            return Ok(f64::INFINITY);
                        }
                        let (lo, hi) = delta_pair(n, a, k)?;
                        let sum = -q.b / q.a;
                        let prod = q.c / q.a;
                        worst = worst.max(((lo + hi - sum) / sum).abs());
                        worst = worst.max(((lo * hi - prod) / prod).abs());
                    }
                }
            }
            Ok(worst)
        }),
        def("shell_spectrum.boundary_conditions", AtMost, 1e-10, |_| {
            let mut worst: f64 = 0.0;
            for n in [2, 3, 5] {
                for a in [0.2, 0.5, 0.8] {
                    for e in shell_spectrum::spectrum(n, a, 12)? {
                        if e.branch == Branch::Zero {
                            continue;
                        }
                        let s = e.value;
                        for (r, sign) in [(1.0, 1.0), (a, -1.0)] {
                            let u = eigenfunction_radial(n, a, e.k, e.branch, r)?;
                            let du = eigenfunction_radial_deriv(n, a, e.k, e.branch, r)?;
                            worst = worst.max((sign * du - s * u).abs() / (1.0 + du.abs() + s * u.abs()));
                        }
                    }
                }
            }
            Ok(worst)
        }),
        def("rayleigh.w2_vanishes", AtMost, 1e-10, |ctx| {
            max_of(identity_cases().into_iter().map(|(n, a, d)| {
                Ok(ctx.ray.w2_signed(&cfg(n, a, d)?, ctx.w2_sign)?.abs())
            }))
        }),
        def("rayleigh.v2_vanishes", AtMost, 1e-10, |ctx| {
            max_of(identity_cases().into_iter().map(|(n, a, d)| Ok(ctx.ray.v2(&cfg(n, a, d)?)?.abs())))
        }),
        def("rayleigh.w1_offset_invariant", AtMost, 1e-10, |ctx| {
            max_of(identity_cases().into_iter().map(|(n, a, d)| {
                Ok((ctx.ray.w1(&cfg(n, a, d)?)? - ctx.ray.w1(&cfg(n, a, 0.0)?)?).abs())
            }))
        }),
        def("rayleigh.v1_offset_invariant", AtMost, 1e-10, |ctx| {
            max_of(identity_cases().into_iter().map(|(n, a, d)| {
                Ok((ctx.ray.v1(&cfg(n, a, d)?)? - ctx.ray.v1(&cfg(n, a, 0.0)?)?).abs())
            }))
        }),
        def("rayleigh.w3_increasing", Above, 1e-8, |ctx| increments(ctx, |r, c| r.w3(c))),
        def("rayleigh.v3_increasing", Above, 1e-8, |ctx| increments(ctx, |r, c| r.v3(c))),
        def("rayleigh.comparators_below", AtMost, 1e-12, |ctx| {
            max_of(identity_cases().into_iter().map(|(n, a, d)| {
                let c = cfg(n, a, d)?;
                let g = ctx.ray.g_comparator(&c)? - ctx.ray.w3(&c)?;
                let h = ctx.ray.h_comparator(&c)? - ctx.ray.v3(&c)?;
                Ok(g.max(h))
            }))
        }),
        def("rayleigh.energy_decomposition", AtMost, 1e-8, |ctx| {
            let mut cases = Vec::new();
            for n in [2, 3, 4] {
                for a in [0.3, 0.6] {
                    for f in [0.3, 0.8] {
                        cases.push((n, a, f * (1.0 - a)));
                    }
                }
            }
            max_of(cases.into_iter().map(|(n, a, d)| {
                let c = cfg(n, a, d)?;
                Ok((oracle::direct_energy(&c)? - ctx.ray.steklov_bound(&c)?.energy).abs())
            }))
        }),
        def("rayleigh.bound_at_concentric", AtMost, 1e-9, |ctx| {
            max_of(anchor_pairs().into_iter().map(|(n, a)| {
                Ok((ctx.ray.steklov_bound(&cfg(n, a, 0.0)?)?.bound - sigma1_closed_form(n, a)?).abs())
            }))
        }),
        def("rayleigh.bound_decreasing", Below, 0.0, |ctx| {
            max_of(anchor_pairs().into_iter().map(|(n, a)| {
                let b = offset_grid(a, 21, 0.95)
                    .into_iter()
                    .map(|d| Ok(ctx.ray.steklov_bound(&cfg(n, a, d)?)?.bound))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_step(&b))
            }))
        }),
        def("rayleigh.test_function_orthogonality", AtMost, 1e-10, |ctx| {
            let mut worst: f64 = 0.0;
            for (n, a, d) in identity_cases().into_iter().step_by(3) {
                let c = cfg(n, a, d)?;
                for i in 1..n {
                    worst = worst.max(ctx.ray.test_function_orthogonality(&c, i)?.abs());
                }
            }
            Ok(worst)
        }),
        def("rayleigh.ds_bound_at_concentric", AtMost, 1e-9, |ctx| {
            max_of([2, 3, 4, 5].into_iter().flat_map(|n| [0.2, 0.5, 0.8].map(|a| (n, a))).map(|(n, a)| {
                Ok((ctx.ray.ds_bound(&cfg(n, a, 0.0)?)? - tau1_concentric(n, a)?).abs())
            }))
        }),
        def("rayleigh.ds_bound_decreasing", Below, 0.0, |ctx| {
            max_of([2, 3, 4, 5].into_iter().flat_map(|n| [0.2, 0.5, 0.8].map(|a| (n, a))).map(|(n, a)| {
                let b = offset_grid(a, 21, 0.95)
                    .into_iter()
                    .map(|d| ctx.ray.ds_bound(&cfg(n, a, d)?))
                    .collect::<Result<Vec<_>>>()?;
                Ok(max_step(&b))
            }))
        }),
        def("shell_spectrum.fraser_schoen_1e-2", AtMost, 0.05, |_| {
            max_of([3, 4].map(|n| {
                let target = 1.0 / (n - 1) as f64;
                Ok(((normalized_increment(n, 1e-2)? - target) / target).abs())
            }))
        }),
        def("shell_spectrum.fraser_schoen_1e-3", AtMost, 0.005, |_| {
            max_of([3, 4].map(|n| {
                let target = 1.0 / (n - 1) as f64;
                Ok(((normalized_increment(n, 1e-3)? - target) / target).abs())
            }))
        }),
        def("shell_spectrum.optimal_eps_interior", Above, 0.0, |_| {
            min_of([2, 3, 4].map(|n| {
                let (_, best) = optimal_eps(n)?;
                let edge = scale_invariant(n, 0.0)?.max(scale_invariant(n, 0.9999)?);
                Ok(best - edge)
            }))
        }),
        def("shell_spectrum.optimal_eps_vs_grid", AtMost, 1e-4, |_| {
            max_of([2, 3, 4].map(|n| {
                let (eps, _) = optimal_eps(n)?;
                let (grid_eps, _) = oracle::grid_argmax(n, 10_000)?;
                Ok((eps - grid_eps).abs())
            }))
        }),
        def("eigensolver.concentric_sigma1", AtMost, 1e-8, |_| {
            max_of(SOLVER_RADII.map(|a| {
                let r = eigensolver::solve_steklov(&cfg(2, a, 0.0)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
                Ok((r.first_eigenvalue() - sigma1_closed_form(2, a)?).abs())
            }))
        }),
        def("eigensolver.concentric_sigma1_double", AtMost, 1e-8, |_| {
            max_of(SOLVER_RADII.map(|a| {
                let r = eigensolver::solve_steklov(&cfg(2, a, 0.0)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
                let (s1, s2) = (r.eigenvalues[1], r.eigenvalues[2]);
                Ok((s2 - s1).abs() / s1)
            }))
        }),
        def("eigensolver.concentric_spectrum", AtMost, 1e-7, |_| {
            max_of(SOLVER_RADII.map(|a| {
                let r = eigensolver::solve_steklov(&cfg(2, a, 0.0)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
                concentric_spectrum_error(a, &r.eigenvalues)
            }))
        }),
        def("eigensolver.ds_concentric", AtMost, 1e-8, |_| {
            max_of(SOLVER_RADII.map(|a| {
                let r = eigensolver::solve_dirichlet_steklov(&cfg(2, a, 0.0)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
                Ok((r.first_eigenvalue() - 1.0 / (1.0 / a).ln()).abs())
            }))
        }),
        def("eigensolver.offset_lowers_sigma1", Below, 0.0, |_| {
            let r = eigensolver::solve_steklov(&cfg(2, 0.5, 0.3)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
            Ok(r.first_eigenvalue() - sigma1_closed_form(2, 0.5)?)
        }),
        def("eigensolver.offset_residual", AtMost, 1e-6, |_| {
            let r = eigensolver::solve_steklov(&cfg(2, 0.5, 0.3)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
            Ok(r.residual)
        }),
    ]
}

/// Largest gap between the concentric spectrum below `δ₀` (with
/// multiplicity) and the leading solver eigenvalues.
pub fn concentric_spectrum_error(a: f64, solver: &[f64]) -> Result<f64> {
    let cut = delta0(2, a)?;
    let mut exact = Vec::new();
    for e in shell_spectrum::spectrum(2, a, DEFAULT_ORDER)? {
        if e.value < cut * (1.0 - 1e-9) {
            exact.extend(std::iter::repeat_n(e.value, e.multiplicity as usize));
        }
    }
    if exact.len() > solver.len() {
        return Ok(f64::INFINITY);
    }
    Ok(exact.iter().zip(solver).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

fn solver_grid(problem: Problem, a: f64) -> Result<Vec<f64>> {
    offset_grid(a, 20, 0.95)
        .into_par_iter()
        .map(|d| Ok(eigensolver::solve_auto(&cfg(2, a, d)?, problem, eigensolver::AUTO_MAX_ORDER)?.result.first_eigenvalue()))
        .collect()
}

fn full_checks() -> Vec<CheckDef> {
    use Relation::*;
    let mut defs = Vec::new();
    for (name, a) in [
        ("eigensolver.sigma1_decreasing_a0.2", 0.2),
        ("eigensolver.sigma1_decreasing_a0.5", 0.5),
        ("eigensolver.sigma1_decreasing_a0.8", 0.8),
    ] {
        defs.push(def(name, Below, 0.0, move |_| Ok(max_step(&solver_grid(Problem::Steklov, a)?))));
    }
    for (name, a) in [
        ("eigensolver.tau1_decreasing_a0.2", 0.2),
        ("eigensolver.tau1_decreasing_a0.5", 0.5),
        ("eigensolver.tau1_decreasing_a0.8", 0.8),
    ] {
        defs.push(def(name, Below, 0.0, move |_| {
            Ok(max_step(&solver_grid(Problem::DirichletSteklov, a)?))
        }));
    }
    defs.push(def("eigensolver.sigma1_below_rayleigh", AtMost, 1e-8, |ctx| {
        max_of(SOLVER_RADII.map(|a| {
            let sigma = solver_grid(Problem::Steklov, a)?;
            max_of(offset_grid(a, 20, 0.95).into_iter().zip(sigma).map(|(d, s)| {
                Ok(s - ctx.ray.steklov_bound(&cfg(2, a, d)?)?.bound)
            }))
        }))
    }));
    defs.push(def("eigensolver.spectral_convergence", AtMost, 0.0, |_| {
        // e(16) must beat e(8) by a decade unless both sit at the noise floor.
        let mut worst = f64::NEG_INFINITY;
        for (a, d) in [(0.5, 0.1), (0.5, 0.3), (0.8, 0.05), (0.2, 0.2)] {
            let c = cfg(2, a, d)?;
            let reference = eigensolver::solve_auto(&c, Problem::Steklov, eigensolver::AUTO_MAX_ORDER)?
                .result
                .first_eigenvalue();
            let err = |n: usize| -> Result<f64> {
                Ok((eigensolver::first_eigenvalue(&c, Problem::Steklov, n, DEFAULT_POINTS)? - reference).abs())
            };
            let (e8, e16) = (err(8)?, err(16)?);
            worst = worst.max(e16 - (e8 / 10.0).max(1e-11));
        }
        Ok(worst)
    }));
    defs.push(def("eigensolver.point_count_invariance", AtMost, 1e-10, |_| {
        max_of([(0.5, 0.3), (0.8, 0.1)].map(|(a, d)| {
            let c = cfg(2, a, d)?;
            let coarse = eigensolver::first_eigenvalue(&c, Problem::Steklov, DEFAULT_ORDER, DEFAULT_POINTS)?;
            let fine = eigensolver::first_eigenvalue(&c, Problem::Steklov, DEFAULT_ORDER, 2 * DEFAULT_POINTS)?;
            Ok((coarse - fine).abs())
        }))
    }));
    defs
}

/// Runs the suite. The report lists checks in a fixed order.
pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let ctx = Ctx {
        ray: Rayleigh::new(opts.tol),
        w2_sign: if opts.fault == Some(Fault::FlipW2Sign) { -1.0 } else { 1.0 },
    };
    let mut defs = fast_checks();
    if opts.level == Level::Full {
        defs.extend(full_checks());
    }
    let checks = defs
        .par_iter()
        .map(|c| Check::evaluate(c.name, c.relation, c.tolerance, (c.measure)(&ctx)))
        .collect();
    VerifyReport { checks }
}
