//! Self-contained dense numerical kernels: symmetric eigendecomposition,
//! thin SVD, and ridge / least-squares solvers.
//!
//! Every solver is deterministic: identical inputs produce bit-identical
//! outputs within one build. No global state, no randomness.

mod eigen;
mod ridge;
mod svd;

pub use eigen::{sym_eig, EigenDecomposition};
pub use ridge::{cholesky, column_means, ridge_solve, solve_normal_equations, RidgeSolution};
pub use svd::{thin_svd, ThinSvd};

use core::fmt;

/// Errors from the numerical kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericsError {
    /// Input contains NaN or infinity.
    NonFinite,
    /// Matrix expected square.
    NotSquare { rows: usize, cols: usize },
    /// Symmetry violated beyond tolerance.
    NotSymmetric { max_asym: f64 },
    /// Iteration failed to reach the convergence threshold.
    NoConvergence { sweeps: usize },
    /// Dimensions of the operands are incompatible.
    DimensionMismatch,
    /// Ridge coefficient must be nonnegative.
    NegativeRidge(f64),
    /// Empty input where at least one row/element is required.
    Empty,
    /// Matrix is not positive definite (Cholesky pivot failed).
    NotPositiveDefinite { pivot: usize },
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericsError::NonFinite => write!(f, "input contains non-finite values"),
            NumericsError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            NumericsError::NotSymmetric { max_asym } => {
                write!(f, "matrix asymmetry {max_asym:e} exceeds tolerance")
            }
            NumericsError::NoConvergence { sweeps } => {
                write!(f, "iteration did not converge within {sweeps} sweeps")
            }
            NumericsError::DimensionMismatch => write!(f, "incompatible operand dimensions"),
            NumericsError::NegativeRidge(v) => write!(f, "ridge coefficient {v} is negative"),
            NumericsError::Empty => write!(f, "input must contain at least one element"),
            NumericsError::NotPositiveDefinite { pivot } => {
                write!(f, "matrix not positive definite (pivot {pivot})")
            }
        }
    }
}

impl core::error::Error for NumericsError {}
