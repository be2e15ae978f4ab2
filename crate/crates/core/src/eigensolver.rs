//! Planar Steklov and Dirichlet–Steklov eigenvalues of eccentric annuli.
//!
//! Trial functions are exact harmonic fields centred in the hole,
//! `{1, ln r} ∪ {r^{±k} cos kθ, r^{±k} sin kθ : 1 ≤ k ≤ N}`, so by Green's
//! identity the energy form is a boundary integral,
//! `K_ij = ∫_{∂Ω} φ_i ∂_n φ_j`, next to the mass form `M_ij = ∫_{∂Ω} φ_i φ_j`.
//! Both are assembled with the trapezoid rule, which is spectrally accurate
//! for these periodic analytic integrands. The generalized problem
//! `K c = σ M c` is the Rayleigh–Ritz reduction of the Steklov problem on
//! the span of the basis, so every computed eigenvalue is an upper bound
//! that decreases as `N` grows.
//!
//! For the Dirichlet–Steklov problem each order uses the combination
//! `r^k - a^{2k} r^{-k}` (and `ln(r/a)`), which vanishes on the hole; the
//! mass form then lives on the outer circle only.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Complex, DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ShellConfig;
use crate::linalg::{condition_number, generalized_eigen};

pub const MAX_GRAM_CONDITION: f64 = 1e14;
pub const DEFAULT_ORDER: usize = 24;
pub const DEFAULT_POINTS: usize = 512;
pub const MULTIPLICITY_REL_TOL: f64 = 1e-8;
/// Boundary samples used by [`boundary_residual`].
pub const RESIDUAL_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Steklov,
    DirichletSteklov,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Steklov => "steklov",
            Problem::DirichletSteklov => "dirichlet-steklov",
        })
    }
}

/// Harmonic trial space of order `N` about the hole's centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrefftzBasis {
    pub problem: Problem,
    pub max_order: usize,
    /// Inner radius; used by the Dirichlet–Steklov combinations.
    pub a: f64,
}

/// Value and gradient of one basis field at a point.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct FieldValue {
    v: f64,
    gx: f64,
    gy: f64,
}

impl TrefftzBasis {
    pub fn new(problem: Problem, max_order: usize, a: f64) -> Self {
        Self { problem, max_order, a }
    }

    pub fn len(&self) -> usize {
        match self.problem {
            Problem::Steklov => 4 * self.max_order + 2,
            Problem::DirichletSteklov => 2 * self.max_order + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Evaluates every field at `(x, y)`, appending to `out`.
    fn eval_into(&self, x: f64, y: f64, out: &mut Vec<FieldValue>) {
        out.clear();
        let z = Complex::new(x, y);
        let r2 = x * x + y * y;
        let log_grad = FieldValue { v: 0.5 * r2.ln(), gx: x / r2, gy: y / r2 };
        // Re g and Im g for holomorphic g, with ∇Re g = (Re g', -Im g')
        // and ∇Im g = (Im g', Re g').
        let re = |g: Complex<f64>, dg: Complex<f64>| FieldValue { v: g.re, gx: dg.re, gy: -dg.im };
        let im = |g: Complex<f64>, dg: Complex<f64>| FieldValue { v: g.im, gx: dg.im, gy: dg.re };
        let w = z.inv();
        let (mut zk, mut wk) = (Complex::new(1.0, 0.0), Complex::new(1.0, 0.0));

        match self.problem {
            Problem::Steklov => {
                out.push(FieldValue { v: 1.0, gx: 0.0, gy: 0.0 });
                out.push(log_grad);
                for k in 1..=self.max_order {
                    let kf = k as f64;
                    let zk1 = zk;
                    zk *= z;
                    wk *= w;
                    // z^k and its derivative k z^{k-1}; z^{-k} and -k z^{-k-1}.
                    let dz = zk1 * kf;
                    let dw = -wk * w * kf;
                    out.push(re(zk, dz));
                    out.push(im(zk, dz));
                    out.push(re(wk, dw));
                    // r^{-k} sin kθ = -Im z^{-k}
                    let s = im(wk, dw);
                    out.push(FieldValue { v: -s.v, gx: -s.gx, gy: -s.gy });
                }
            }
            Problem::DirichletSteklov => {
                let ln_a = self.a.ln();
                out.push(FieldValue { v: log_grad.v - ln_a, ..log_grad });
                let a2 = self.a * self.a;
                let mut a2k = 1.0;
                for k in 1..=self.max_order {
                    let kf = k as f64;
                    let zk1 = zk;
                    zk *= z;
                    wk *= w;
                    a2k *= a2;
                    let dz = zk1 * kf;
                    let dw = -wk * w * kf;
                    // r^k cos kθ - a^{2k} r^{-k} cos kθ  = Re(z^k - a^{2k} z^{-k})
                    // r^k sin kθ - a^{2k} r^{-k} sin kθ  = Im(z^k + a^{2k} z^{-k})
                    out.push(re(zk - wk * a2k, dz - dw * a2k));
                    out.push(im(zk + wk * a2k, dz + dw * a2k));
                }
            }
        }
    }

    /// Value of `Σ c_i φ_i` and its gradient at `(x, y)`.
    fn combine(&self, coeffs: &[f64], x: f64, y: f64, scratch: &mut Vec<FieldValue>) -> FieldValue {
        self.eval_into(x, y, scratch);
        scratch.iter().zip(coeffs).fold(FieldValue::default(), |acc, (f, &c)| FieldValue {
            v: acc.v + c * f.v,
            gx: acc.gx + c * f.gx,
            gy: acc.gy + c * f.gy,
        })
    }
}

/// A boundary point with outward unit normal and quadrature weight.
#[derive(Debug, Clone, Copy)]
struct BoundaryNode {
    x: f64,
    y: f64,
    nx: f64,
    ny: f64,
    w: f64,
}

/// Outer circle `y_d + (cos t, sin t)` and, for the Steklov problem, the
/// hole `a (cos t, sin t)`, each sampled at `m` equispaced parameters.
/// The offset is along the second axis.
fn boundary_nodes(cfg: &ShellConfig, problem: Problem, m: usize, phase: f64) -> Vec<BoundaryNode> {
    let step = 2.0 * PI / m as f64;
    let mut nodes = Vec::with_capacity(2 * m);
    for j in 0..m {
        let (s, c) = (step * (j as f64 + phase)).sin_cos();
        nodes.push(BoundaryNode { x: c, y: cfg.d + s, nx: c, ny: s, w: step });
    }
    if problem == Problem::Steklov {
        for j in 0..m {
            let (s, c) = (step * (j as f64 + phase)).sin_cos();
            nodes.push(BoundaryNode { x: cfg.a * c, y: cfg.a * s, nx: -c, ny: -s, w: step * cfg.a });
        }
    }
    nodes
}

/// Assembled boundary forms together with the basis scaling used.
#[derive(Debug, Clone)]
pub struct Assembly {
    pub stiffness: DMatrix<f64>,
    pub mass: DMatrix<f64>,
    /// Each basis field was divided by this before assembly.
    pub scales: Vec<f64>,
    /// `max |K - Kᵀ|` before symmetrization.
    pub symmetry_defect: f64,
}

/// Output of one Trefftz solve.
#[derive(Debug, Clone)]
pub struct EigResult {
    pub problem: Problem,
    pub cfg: ShellConfig,
    pub order: usize,
    pub points: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `j` holds the weights of mode `j` on the unscaled basis fields.
    pub coefficients: DMatrix<f64>,
    pub gram_condition: f64,
    pub symmetry_defect: f64,
    /// Boundary-condition defect of the first nonzero mode.
    pub residual: f64,
}

impl EigResult {
    /// Index of `σ₁` (Steklov, after the constant mode) or `τ₁`.
    pub fn first_mode(&self) -> usize {
        match self.problem {
            Problem::Steklov => 1,
            Problem::DirichletSteklov => 0,
        }
    }

    pub fn first_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.first_mode()]
    }

    pub fn basis(&self) -> TrefftzBasis {
        TrefftzBasis::new(self.problem, self.order, self.cfg.a)
    }

    /// Eigenvalues grouped by numerical multiplicity.
    pub fn groups(&self) -> Vec<(f64, usize)> {
        multiplicity_groups(&self.eigenvalues, MULTIPLICITY_REL_TOL)
    }
}

/// Groups consecutive sorted values whose relative gap is at most `rel_tol`
/// (values below `rel_tol` in magnitude count as zero).
pub fn multiplicity_groups(values: &[f64], rel_tol: f64) -> Vec<(f64, usize)> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match groups.last_mut() {
            Some((first, count)) if (v - *first).abs() <= rel_tol * v.abs().max(first.abs()).max(1e-1) => {
                *count += 1;
            }
            _ => groups.push((v, 1)),
        }
    }
    groups
}

fn check_request(cfg: &ShellConfig, order: usize, points: usize) -> Result<()> {
    if cfg.n != 2 {
        return Err(Error::domain("the eigensolver handles planar shells only (dim 2)"));
    }
    if order < 4 {
        return Err(Error::domain("basis order must be at least 4"));
    }
    if points < 8 * order {
        return Err(Error::domain(format!(
            "need at least 8 boundary points per basis order ({} for order {order})",
            8 * order
        )));
    }
    Ok(())
}

/// Boundary-integrated energy and mass forms.
pub fn assemble(cfg: &ShellConfig, problem: Problem, order: usize, points: usize) -> Result<Assembly> {
    check_request(cfg, order, points)?;
    let basis = TrefftzBasis::new(problem, order, cfg.a);
    let nb = basis.len();
    let nodes = boundary_nodes(cfg, problem, points, 0.0);

    let mut values = DMatrix::<f64>::zeros(nb, nodes.len());
    let mut normals = DMatrix::<f64>::zeros(nb, nodes.len());
    let mut scratch = Vec::with_capacity(nb);
    for (j, node) in nodes.iter().enumerate() {
        basis.eval_into(node.x, node.y, &mut scratch);
        for (i, f) in scratch.iter().enumerate() {
            values[(i, j)] = f.v;
            normals[(i, j)] = f.gx * node.nx + f.gy * node.ny;
        }
    }

    let scales: Vec<f64> = (0..nb)
        .map(|i| values.row(i).amax())
        .map(|s| if s > 0.0 { s } else { 1.0 })
        .collect();
    let mut weighted = values.clone();
    for i in 0..nb {
        let inv = 1.0 / scales[i];
        for (j, node) in nodes.iter().enumerate() {
            values[(i, j)] *= inv;
            normals[(i, j)] *= inv;
            weighted[(i, j)] = values[(i, j)] * node.w;
        }
    }

    let mass = &weighted * values.transpose();
    let raw_stiffness = &weighted * normals.transpose();
    let symmetry_defect = (&raw_stiffness - raw_stiffness.transpose()).amax();
    let stiffness = (&raw_stiffness + raw_stiffness.transpose()) * 0.5;
    let mass = (&mass + mass.transpose()) * 0.5;
    Ok(Assembly { stiffness, mass, scales, symmetry_defect })
}

/// Alias of [`assemble`] for the Steklov problem; returns `(K, M)`.
pub fn assemble_steklov(cfg: &ShellConfig, order: usize, points: usize) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let a = assemble(cfg, Problem::Steklov, order, points)?;
    Ok((a.stiffness, a.mass))
}

pub fn solve(cfg: &ShellConfig, problem: Problem, order: usize, points: usize) -> Result<EigResult> {
    let asm = assemble(cfg, problem, order, points)?;
    let gram_condition = condition_number(&asm.mass)?;
    if !(gram_condition <= MAX_GRAM_CONDITION) {
        return Err(Error::IllConditioned { condition: gram_condition, limit: MAX_GRAM_CONDITION });
    }
    let Some(eig) = generalized_eigen(&asm.stiffness, &asm.mass)? else {
        return Err(Error::IllConditioned { condition: gram_condition, limit: MAX_GRAM_CONDITION });
    };
    let mut coefficients = eig.vectors;
    for (i, s) in asm.scales.iter().enumerate() {
        coefficients.row_mut(i).scale_mut(1.0 / s);
    }
    let mut result = EigResult {
        problem,
        cfg: *cfg,
        order,
        points,
        eigenvalues: eig.values,
        coefficients,
        gram_condition,
        symmetry_defect: asm.symmetry_defect,
        residual: 0.0,
    };
    result.residual = boundary_residual(&result, result.first_mode())?;
    Ok(result)
}

/// First nonzero Steklov eigenvalue problem on the planar eccentric annulus.
pub fn solve_steklov(cfg: &ShellConfig, order: usize, points: usize) -> Result<EigResult> {
    solve(cfg, Problem::Steklov, order, points)
}

/// Steklov on the outer circle, Dirichlet on the hole.
pub fn solve_dirichlet_steklov(cfg: &ShellConfig, order: usize, points: usize) -> Result<EigResult> {
    solve(cfg, Problem::DirichletSteklov, order, points)
}

/// `max |∂_n u - σ u| / max |u|` over a boundary sample offset from the
/// assembly nodes, for mode `mode` of `result`.
pub fn boundary_residual(result: &EigResult, mode: usize) -> Result<f64> {
    if mode >= result.eigenvalues.len() {
        return Err(Error::domain(format!(
            "mode {mode} out of range (have {})",
            result.eigenvalues.len()
        )));
    }
    let basis = result.basis();
    let coeffs: Vec<f64> = result.coefficients.column(mode).iter().copied().collect();
    let sigma = result.eigenvalues[mode];
    let mut scratch = Vec::with_capacity(basis.len());
    let (mut defect, mut sup) = (0.0f64, 0.0f64);
    for node in boundary_nodes(&result.cfg, result.problem, RESIDUAL_SAMPLES, 0.37) {
        let f = basis.combine(&coeffs, node.x, node.y, &mut scratch);
        let dn = f.gx * node.nx + f.gy * node.ny;
        defect = defect.max((dn - sigma * f.v).abs());
        sup = sup.max(f.v.abs());
    }
    Ok(defect / (sup + 1e-300))
}

/// Value of mode `mode` at the point `(x, y)`.
pub fn mode_value(result: &EigResult, mode: usize, x: f64, y: f64) -> f64 {
    let basis = result.basis();
    let coeffs: Vec<f64> = result.coefficients.column(mode).iter().copied().collect();
    basis.combine(&coeffs, x, y, &mut Vec::new()).v
}

/// Result of an order-adaptive solve.
#[derive(Debug, Clone)]
pub struct AutoSolve {
    pub result: EigResult,
    /// `|σ(N) - σ(N_prev)|` at the accepted order.
    pub last_change: f64,
    /// True when the change met the tolerance before the order cap or the
    /// conditioning limit.
    pub converged: bool,
}

pub const AUTO_START: usize = 8;
pub const AUTO_STEP: usize = 4;
pub const AUTO_MAX_ORDER: usize = 64;
pub const AUTO_REL_TOL: f64 = 1e-12;

/// Raises the basis order from 8 in steps of 4 until the first eigenvalue
/// settles, the order reaches `max_order`, or the Gram matrix becomes too
/// ill-conditioned; in the last case the previous order is kept. Uses
/// `max(512, 8N)` boundary points at order `N`.
pub fn solve_auto(cfg: &ShellConfig, problem: Problem, max_order: usize) -> Result<AutoSolve> {
    let points = |n: usize| DEFAULT_POINTS.max(8 * n);
    let mut best = solve(cfg, problem, AUTO_START, points(AUTO_START))?;
    let mut last_change = f64::INFINITY;
    let mut order = AUTO_START + AUTO_STEP;
    while order <= max_order {
        let next = match solve(cfg, problem, order, points(order)) {
            Ok(r) => r,
            Err(Error::IllConditioned { .. }) => break,
            Err(e) => return Err(e),
        };
        last_change = (next.first_eigenvalue() - best.first_eigenvalue()).abs();
        best = next;
        if last_change <= AUTO_REL_TOL * best.first_eigenvalue().abs() {
            return Ok(AutoSolve { result: best, last_change, converged: true });
        }
        order += AUTO_STEP;
    }
    Ok(AutoSolve { result: best, last_change, converged: false })
}

/// `σ₁` or `τ₁` at order `N` with `m` points, as a plain number.
pub fn first_eigenvalue(cfg: &ShellConfig, problem: Problem, order: usize, points: usize) -> Result<f64> {
    Ok(solve(cfg, problem, order, points)?.first_eigenvalue())
}

/// Convenience: the coefficient vector of `mode` as a column.
pub fn mode_coefficients(result: &EigResult, mode: usize) -> DVector<f64> {
    result.coefficients.column(mode).into_owned()
}
