//! Ridge and least-squares solvers over the normal equations.

use alloc::vec;
use alloc::vec::Vec;

use super::{sym_eig, thin_svd, NumericsError};
use crate::fmath::sqrt;
use crate::mat::Mat;

/// Ridge solution: the `p x q` coefficient matrix, plus a flag marking
/// that the unregularized minimal-norm path was taken for a rank-deficient
/// design.
#[derive(Debug, Clone)]
pub struct RidgeSolution {
    pub coefficients: Mat,
    pub min_norm_fallback: bool,
}

/// Relative cutoff below which singular values / eigenvalues are treated
/// as zero in pseudo-inverse paths.
const PINV_TOL: f64 = 1e-12;

/// Lower-triangular Cholesky factor of a symmetric positive definite
/// matrix. Fails with [`NumericsError::NotPositiveDefinite`] when a pivot
/// is not strictly positive.
pub fn cholesky(s: &Mat) -> Result<Mat, NumericsError> {
    let n = s.rows();
    if s.cols() != n {
        return Err(NumericsError::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if !s.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = s.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return Err(NumericsError::NotPositiveDefinite { pivot: i });
                }
                l.set(i, j, sqrt(sum));
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    Ok(l)
}

fn cholesky_solve(l: &Mat, rhs: &Mat) -> Mat {
    let n = l.rows();
    let q = rhs.cols();
    let mut x = rhs.clone();
    // forward substitution L y = rhs
    for i in 0..n {
        for c in 0..q {
            let mut v = x.get(i, c);
            for k in 0..i {
                v -= l.get(i, k) * x.get(k, c);
            }
            x.set(i, c, v / l.get(i, i));
        }
    }
    // back substitution Lᵀ x = y
    for i in (0..n).rev() {
        for c in 0..q {
            let mut v = x.get(i, c);
            for k in (i + 1)..n {
                v -= l.get(k, i) * x.get(k, c);
            }
            x.set(i, c, v / l.get(i, i));
        }
    }
    x
}

/// Solves `min ||X B - Y||^2 + lambda ||B||^2` for the `p x q` matrix `B`.
///
/// With `lambda > 0` the regularized normal equations are solved by
/// Cholesky, falling back to an eigendecomposition if the factorization
/// fails. With `lambda = 0` the least-squares solution is computed from
/// the thin SVD of `X` directly (no squared conditioning); for a
/// rank-deficient design this is the minimal-norm solution and is flagged
/// in the result.
pub fn ridge_solve(x: &Mat, y: &Mat, lambda: f64) -> Result<RidgeSolution, NumericsError> {
    if x.rows() == 0 {
        return Err(NumericsError::Empty);
    }
    if x.rows() != y.rows() {
        return Err(NumericsError::DimensionMismatch);
    }
    if lambda < 0.0 || lambda.is_nan() {
        return Err(NumericsError::NegativeRidge(lambda));
    }
    if !x.is_finite() || !y.is_finite() {
        return Err(NumericsError::NonFinite);
    }

    if lambda == 0.0 {
        let svd = thin_svd(x)?;
        let p = x.cols();
        let q = y.cols();
        let rank = svd.rank(PINV_TOL);
        let uty = svd.u.transpose().matmul(y);
        let mut scaled = Mat::zeros(svd.singular_values.len(), q);
        for i in 0..rank {
            let inv = 1.0 / svd.singular_values[i];
            for c in 0..q {
                scaled.set(i, c, uty.get(i, c) * inv);
            }
        }
        let coefficients = svd.v.matmul(&scaled);
        debug_assert_eq!(coefficients.rows(), p);
        return Ok(RidgeSolution {
            coefficients,
            min_norm_fallback: rank < p,
        });
    }

    let mut gram = x.gram();
    for i in 0..gram.rows() {
        let v = gram.get(i, i) + lambda;
        gram.set(i, i, v);
    }
    let cross = x.transpose().matmul(y);
    let (coefficients, _) = solve_spd(&gram, &cross)?;
    Ok(RidgeSolution {
        coefficients,
        min_norm_fallback: false,
    })
}

/// Solves the (already accumulated) normal equations
/// `(gram + lambda I) B = cross`, where `gram = XᵀX` and `cross = XᵀY`.
///
/// Used by streaming fits that never materialize the design matrix. For
/// `lambda = 0` the rank-revealing eigendecomposition pseudo-inverse is
/// used; a detected rank deficiency is flagged as minimal-norm.
pub fn solve_normal_equations(
    gram: &Mat,
    cross: &Mat,
    lambda: f64,
) -> Result<RidgeSolution, NumericsError> {
    if gram.rows() != gram.cols() {
        return Err(NumericsError::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    if gram.rows() != cross.rows() {
        return Err(NumericsError::DimensionMismatch);
    }
    if lambda < 0.0 || lambda.is_nan() {
        return Err(NumericsError::NegativeRidge(lambda));
    }
    if lambda > 0.0 {
        let mut g = gram.clone();
        for i in 0..g.rows() {
            let v = g.get(i, i) + lambda;
            g.set(i, i, v);
        }
        let (coefficients, _) = solve_spd(&g, cross)?;
        return Ok(RidgeSolution {
            coefficients,
            min_norm_fallback: false,
        });
    }
    let (coefficients, rank) = eig_pseudo_solve_ranked(gram, cross)?;
    Ok(RidgeSolution {
        coefficients,
        min_norm_fallback: rank < gram.rows(),
    })
}

fn solve_spd(g: &Mat, rhs: &Mat) -> Result<(Mat, bool), NumericsError> {
    match cholesky(g) {
        Ok(l) => Ok((cholesky_solve(&l, rhs), false)),
        Err(_) => Ok((eig_pseudo_solve_ranked(g, rhs)?.0, true)),
    }
}

fn eig_pseudo_solve_ranked(g: &Mat, rhs: &Mat) -> Result<(Mat, usize), NumericsError> {
    let eig = sym_eig(g)?;
    let top = eig.values.first().copied().unwrap_or(0.0);
    let cutoff = PINV_TOL * top;
    let vt_rhs = eig.vectors.transpose().matmul(rhs);
    let mut scaled = Mat::zeros(vt_rhs.rows(), vt_rhs.cols());
    let mut rank = 0;
    for (i, &lam) in eig.values.iter().enumerate() {
        if lam > cutoff && lam > 0.0 {
            rank += 1;
            let inv = 1.0 / lam;
            for c in 0..vt_rhs.cols() {
                scaled.set(i, c, vt_rhs.get(i, c) * inv);
            }
        }
    }
    Ok((eig.vectors.matmul(&scaled), rank))
}

/// Mean of each column, used by fitting code to center designs.
pub fn column_means(m: &Mat) -> Vec<f64> {
    let mut means = vec![0.0; m.cols()];
    for i in 0..m.rows() {
        for (s, &v) in means.iter_mut().zip(m.row(i).iter()) {
            *s += v;
        }
    }
    let n = m.rows().max(1) as f64;
    for s in means.iter_mut() {
        *s /= n;
    }
    means
}
