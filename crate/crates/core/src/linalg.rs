//! Dense symmetric eigenproblems.
//!
//! Standard problems are solved by cyclic Jacobi rotations; the generalized
//! problem `K c = λ M c` is reduced through the Cholesky factor of `M`.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// multiple of the full Frobenius norm.
pub const JACOBI_REL_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues with eigenvectors in matching columns.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
pub fn jacobi_eigen(matrix: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(Error::domain("eigensolver needs a square matrix"));
    }
    let mut a = matrix.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = a.norm();
    let target = JACOBI_REL_TOL * scale;

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NonConvergence {
                what: "Jacobi eigensolver",
                detail: format!(
                    "{JACOBI_MAX_SWEEPS} sweeps, off-diagonal norm {:.3e}",
                    off_diagonal_norm(&a)
                ),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymmetricEigen { values, vectors, sweeps })
}

/// `λ_max / λ_min` of a symmetric matrix; infinite when `λ_min ≤ 0`.
///
/// Only eigenvalues are needed here, so this uses nalgebra's tridiagonal
/// QR rather than Jacobi.
pub fn condition_number(matrix: &DMatrix<f64>) -> Result<f64> {
    if matrix.nrows() != matrix.ncols() || matrix.is_empty() {
        return Err(Error::domain("condition number needs a non-empty square matrix"));
    }
    let values = matrix.symmetric_eigenvalues();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(if lo > 0.0 { hi / lo } else { f64::INFINITY })
}

/// Solves `K c = λ M c` with `M` symmetric positive definite.
///
/// Returns `None` when the Cholesky factorization of `M` fails.
pub fn generalized_eigen(k: &DMatrix<f64>, m: &DMatrix<f64>) -> Result<Option<SymmetricEigen>> {
    let Some(chol) = Cholesky::new(m.clone()) else {
        return Ok(None);
    };
    let l = chol.l();
    let lk = l
        .solve_lower_triangular(k)
        .expect("Cholesky factor has a nonzero diagonal");
    let c = l
        .solve_lower_triangular(&lk.transpose())
        .expect("Cholesky factor has a nonzero diagonal");
    let c = (&c + c.transpose()) * 0.5;
    let eig = jacobi_eigen(&c)?;
    let vectors = l
        .transpose()
        .solve_upper_triangular(&eig.vectors)
        .expect("Cholesky factor has a nonzero diagonal");
    Ok(Some(SymmetricEigen { vectors, ..eig }))
}

/// `‖K x - λ M x‖ / (‖K x‖ + |λ| ‖M x‖)` for one eigenpair.
pub fn pair_residual(k: &DMatrix<f64>, m: &DMatrix<f64>, lambda: f64, x: &DVector<f64>) -> f64 {
    let kx = k * x;
    let mx = m * x;
    (&kx - &mx * lambda).norm() / (kx.norm() + lambda.abs() * mx.norm()).max(f64::MIN_POSITIVE)
}
