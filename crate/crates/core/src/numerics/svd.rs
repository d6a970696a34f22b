//! Thin singular value decomposition via one-sided Jacobi orthogonalization.

use alloc::vec;
use alloc::vec::Vec;

use super::NumericsError;
use crate::fmath::{abs, sqrt};
use crate::mat::Mat;

/// Thin SVD `A = U Σ Vᵀ` with `k = min(rows, cols)` retained columns,
/// singular values sorted descending.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    pub u: Mat,
    pub singular_values: Vec<f64>,
    pub v: Mat,
}

impl ThinSvd {
    /// Number of singular values strictly above `tol_rel * sigma_max`;
    /// everything below is the zero class.
    pub fn rank(&self, tol_rel: f64) -> usize {
        match self.singular_values.first() {
            None | Some(0.0) => 0,
            Some(&s0) => self
                .singular_values
                .iter()
                .take_while(|&&s| s > tol_rel * s0)
                .count(),
        }
    }
}

const ORTH_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

/// One-sided Jacobi (Hestenes) thin SVD.
///
/// Column pairs of the tall factor are rotated until mutually orthogonal,
/// so singular values are never formed by squaring the input; the
/// orthogonalized columns give `U Σ` directly and the accumulated rotations
/// give `V`. Deterministic: fixed sweep order, fixed thresholds.
pub fn thin_svd(a: &Mat) -> Result<ThinSvd, NumericsError> {
    if !a.is_finite() {
        return Err(NumericsError::NonFinite);
    }
    // Work on the tall orientation, transposing back afterwards.
    let transposed = a.rows() < a.cols();
    let mut b = if transposed { a.transpose() } else { a.clone() };
    let (rows, cols) = (b.rows(), b.cols());
    let mut v = Mat::identity(cols);

    for sweep in 0..=MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..rows {
                    let bp = b.get(i, p);
                    let bq = b.get(i, q);
                    alpha += bp * bp;
                    beta += bq * bq;
                    gamma += bp * bq;
                }
                if gamma == 0.0 || abs(gamma) <= ORTH_TOL * sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..rows {
                    let bp = b.get(i, p);
                    let bq = b.get(i, q);
                    b.set(i, p, c * bp - s * bq);
                    b.set(i, q, s * bp + c * bq);
                }
                for i in 0..cols {
                    let vp = v.get(i, p);
                    let vq = v.get(i, q);
                    v.set(i, p, c * vp - s * vq);
                    v.set(i, q, s * vp + c * vq);
                }
            }
        }
        if !rotated {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(NumericsError::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    // Column norms are the singular values; sort descending (stable).
    let mut sigma: Vec<(usize, f64)> = (0..cols)
        .map(|j| {
            let mut s = 0.0;
            for i in 0..rows {
                let x = b.get(i, j);
                s += x * x;
            }
            (j, sqrt(s))
        })
        .collect();
    sigma.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.0.cmp(&b.0))
    });

    let mut u_tall = Mat::zeros(rows, cols);
    let mut v_sorted = Mat::zeros(cols, cols);
    let mut values = Vec::with_capacity(cols);
    let mut used = vec![false; rows];
    for (dst, &(src, s)) in sigma.iter().enumerate() {
        values.push(s);
        for i in 0..cols {
            v_sorted.set(i, dst, v.get(i, src));
        }
        if s > 0.0 {
            for i in 0..rows {
                u_tall.set(i, dst, b.get(i, src) / s);
            }
        } else {
            // Exactly null column: complete with a standard basis vector
            // orthogonal to the columns already placed.
            let col = next_basis_completion(&u_tall, dst, &mut used);
            u_tall.set_col(dst, &col);
        }
    }

    if transposed {
        Ok(ThinSvd {
            u: v_sorted,
            singular_values: values,
            v: u_tall,
        })
    } else {
        Ok(ThinSvd {
            u: u_tall,
            singular_values: values,
            v: v_sorted,
        })
    }
}

fn next_basis_completion(u: &Mat, filled: usize, used: &mut [bool]) -> Vec<f64> {
    let rows = u.rows();
    for k in 0..rows {
        if used[k] {
            continue;
        }
        // Gram-Schmidt e_k against the placed columns.
        let mut cand = vec![0.0; rows];
        cand[k] = 1.0;
        for j in 0..filled {
            let mut proj = 0.0;
            for i in 0..rows {
                proj += cand[i] * u.get(i, j);
            }
            for i in 0..rows {
                cand[i] -= proj * u.get(i, j);
            }
        }
        let norm = sqrt(cand.iter().map(|x| x * x).sum());
        if norm > 1e-8 {
            used[k] = true;
            for x in cand.iter_mut() {
                *x /= norm;
            }
            return cand;
        }
    }
    // Unreachable for consistent dimensions; return e_0 as a last resort.
    let mut fallback = vec![0.0; rows];
    fallback[0] = 1.0;
    fallback
}
