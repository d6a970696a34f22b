//! Cyclic Jacobi eigendecomposition for symmetric matrices.

use alloc::vec::Vec;

use super::NumericsError;
use crate::fmath::{abs, sqrt};
use crate::mat::Mat;

/// Result of a symmetric eigendecomposition: eigenvalues in descending
/// order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

const SYMMETRY_TOL: f64 = 1e-12;
const CONVERGENCE_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
const NEGATIVE_CLAMP: f64 = 1e-10;

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps annihilate off-diagonal entries in a fixed row-major pair order
/// until the off-diagonal Frobenius norm falls below
/// `1e-12 * ||S||_F`, with at most 100 sweeps. Eigenvalues in
/// `[-1e-10 * lambda_max, 0)` are clamped to zero, which restores exact
/// positive semi-definiteness for Gram inputs.
pub fn sym_eig(s: &Mat) -> Result<EigenDecomposition, NumericsError> {
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
    let scale = s.max_abs().max(1.0);
    let mut max_asym = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            max_asym = max_asym.max(abs(s.get(i, j) - s.get(j, i)));
        }
    }
    if max_asym > SYMMETRY_TOL * scale {
        return Err(NumericsError::NotSymmetric { max_asym });
    }

    let mut a = s.clone();
    // Work on the symmetrized copy so both triangles agree exactly.
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    let mut v = Mat::identity(n);
    let threshold = CONVERGENCE_TOL * s.frob_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_frob(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s_rot = t * c;

                // two-sided rotation in the (p, q) plane
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s_rot * akq);
                    a.set(k, q, s_rot * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s_rot * aqk);
                    a.set(q, k, s_rot * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s_rot * vkq);
                    v.set(k, q, s_rot * vkp + c * vkq);
                }
            }
        }
    }
    if !converged && off_frob(&a) > threshold {
        return Err(NumericsError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Sort descending by eigenvalue; stable on ties via original index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(j, j)
            .partial_cmp(&a.get(i, i))
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let mut values: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vectors = Mat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, dst, v.get(k, src));
        }
    }

    if let Some(&largest) = values.first() {
        if largest > 0.0 {
            for val in values.iter_mut() {
                if *val < 0.0 && *val >= -NEGATIVE_CLAMP * largest {
                    *val = 0.0;
                }
            }
        }
    }

    Ok(EigenDecomposition { values, vectors })
}

fn off_frob(a: &Mat) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let x = a.get(i, j);
            s += x * x;
        }
    }
    sqrt(2.0 * s)
}
