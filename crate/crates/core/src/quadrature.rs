//! Gauss–Legendre rules and a globally adaptive bisection integrator.
//!
//! Each interval is integrated with the 16-point and the 8-point rule; their
//! difference is the interval's error estimate. The interval with the
//! largest estimate is bisected until the summed estimate meets
//! `max(abs_tol, rel_tol·|value|)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 16;
pub const ESTIMATE_ORDER: usize = 8;
pub const MAX_INTERVALS: usize = 1 << 16;

/// Absolute and relative tolerance pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-12 }
    }
}

impl Tolerance {
    pub fn uniform(tol: f64) -> Self {
        Self { abs: tol, rel: tol }
    }
}

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Number of bisections performed.
    pub subdivisions: usize,
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    /// Builds the `order`-point rule by Newton iteration on `P_order`.
    pub fn gauss_legendre(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let half = order.div_ceil(2);
        for i in 0..half {
            // Tricomi's initial guess for the i-th largest root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(order, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, d) = legendre_with_deriv(order, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        Self { order, nodes, weights }
    }

    /// Cached 16-point rule.
    pub fn default_rule() -> &'static QuadratureRule {
        static RULE: OnceLock<QuadratureRule> = OnceLock::new();
        RULE.get_or_init(|| QuadratureRule::gauss_legendre(DEFAULT_ORDER))
    }

    /// Cached 8-point rule used for error estimation.
    pub fn estimate_rule() -> &'static QuadratureRule {
        static RULE: OnceLock<QuadratureRule> = OnceLock::new();
        RULE.get_or_init(|| QuadratureRule::gauss_legendre(ESTIMATE_ORDER))
    }

    /// Fixed-rule integral over `[lo, hi]`.
    pub fn apply(&self, f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * sum
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl Segment {
    fn new(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Self {
        let value = QuadratureRule::default_rule().apply(f, lo, hi);
        let coarse = QuadratureRule::estimate_rule().apply(f, lo, hi);
        Self { lo, hi, value, error: (value - coarse).abs() }
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn total(segments: &[Segment]) -> (f64, f64) {
    // Fixed left-to-right order keeps the result bit-reproducible.
    let mut sorted: Vec<&Segment> = segments.iter().collect();
    sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    sorted.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

/// Adaptive integral of `f` over `[lo, hi]`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    if !(lo <= hi) {
        return Err(Error::domain("integration bounds must satisfy lo <= hi"));
    }
    if !(abs_tol > 0.0 && rel_tol > 0.0) {
        return Err(Error::domain("quadrature tolerances must be positive"));
    }
    if lo == hi {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, subdivisions: 0 });
    }

    let mut heap = BinaryHeap::new();
    let first = Segment::new(&f, lo, hi);
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut subdivisions = 0;

    loop {
        if !(value.is_finite() && error.is_finite()) {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                detail: "integrand produced a non-finite value".into(),
            });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            break;
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                detail: format!("{MAX_INTERVALS} intervals, error estimate {error:.3e}"),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval cannot be split further in floating point.
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                detail: format!("interval collapsed near {mid}, error estimate {error:.3e}"),
            });
        }
        let left = Segment::new(&f, worst.lo, mid);
        let right = Segment::new(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        // Running sums drift; refresh them periodically.
        if subdivisions % 64 == 0 {
            (value, error) = total(heap.as_slice());
        }
    }

    let (value, error_estimate) = total(heap.as_slice());
    Ok(QuadResult { value, error_estimate, subdivisions })
}

/// [`integrate`] with a [`Tolerance`], returning only the value.
pub fn integrate_value(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    integrate(f, lo, hi, tol.abs, tol.rel).map(|r| r.value)
}
