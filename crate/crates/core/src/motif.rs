//! Motif extraction and projection.
//!
//! The motifs of a reservoir are the eigenvectors of its metric tensor
//! `Q = AᵀA` with positive eigenvalue: an orthonormal set of time-series
//! shapes spanning everything the reservoir can distinguish about a
//! lookback window. They are computed from the thin SVD of the state
//! operator `A` (fewer rows, no squared conditioning) rather than from an
//! eigendecomposition of `Q` itself; `Q` only shows up in tests.

use alloc::vec::Vec;
use core::fmt;

use crate::fmath::{abs, sqrt};
use crate::mat::Mat;
use crate::numerics::{thin_svd, NumericsError};
use crate::scr::{state_operator, ReservoirSpec, ScrError};

/// Default relative cutoff on squared singular values when deciding how
/// many motifs to retain.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

/// Sign convention threshold: the first motif component with magnitude
/// above this is made positive.
const SIGN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum MotifError {
    Reservoir(ScrError),
    Numerics(NumericsError),
    /// Window or coefficient length does not match the basis.
    LengthMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for MotifError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotifError::Reservoir(e) => write!(f, "reservoir error: {e}"),
            MotifError::Numerics(e) => write!(f, "numerical error: {e}"),
            MotifError::LengthMismatch { expected, got } => {
                write!(f, "expected length {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for MotifError {}

impl From<ScrError> for MotifError {
    fn from(e: ScrError) -> Self {
        MotifError::Reservoir(e)
    }
}

impl From<NumericsError> for MotifError {
    fn from(e: NumericsError) -> Self {
        MotifError::Numerics(e)
    }
}

/// Orthonormal motif basis of a reservoir kernel.
///
/// Columns of `motifs` are unit-norm eigenvectors of the metric tensor,
/// eigenvalues descending. The number of retained motifs never exceeds
/// `min(reservoir size, lookback)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifBasis {
    motifs: Mat,
    eigenvalues: Vec<f64>,
    lookback: usize,
    spec: ReservoirSpec,
    rank_tol: f64,
}

impl MotifBasis {
    /// Reassembles a basis from stored fields, e.g. when loading a model
    /// file. Shapes are validated; the float payload is taken verbatim so
    /// a persisted basis reproduces projections bit-identically.
    pub fn from_parts(
        motifs: Mat,
        eigenvalues: Vec<f64>,
        lookback: usize,
        spec: ReservoirSpec,
        rank_tol: f64,
    ) -> Result<Self, MotifError> {
        if motifs.rows() != lookback {
            return Err(MotifError::LengthMismatch {
                expected: lookback,
                got: motifs.rows(),
            });
        }
        if motifs.cols() != eigenvalues.len() {
            return Err(MotifError::LengthMismatch {
                expected: motifs.cols(),
                got: eigenvalues.len(),
            });
        }
        Ok(MotifBasis {
            motifs,
            eigenvalues,
            lookback,
            spec,
            rank_tol,
        })
    }

    /// `tau x N_m` matrix with one motif per column.
    pub fn motifs(&self) -> &Mat {
        &self.motifs
    }

    /// Eigenvalues of the metric tensor (squared singular values of the
    /// state operator), descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lookback(&self) -> usize {
        self.lookback
    }

    /// Number of retained motifs `N_m`.
    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn spec(&self) -> &ReservoirSpec {
        &self.spec
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    /// Single motif as a column copy.
    pub fn motif(&self, i: usize) -> Vec<f64> {
        self.motifs.col_copy(i)
    }

    /// Orthogonal projection of a window onto the motif axes: `Mᵀ u`.
    /// These are the unit-coefficient features the forecaster trains on.
    pub fn project(&self, window: &[f64]) -> Result<Vec<f64>, MotifError> {
        self.check_window(window)?;
        Ok(self.motifs.tr_mul_vec(window))
    }

    /// Projection written into a caller-provided buffer of length
    /// [`count`](Self::count); avoids allocation in hot loops.
    pub fn project_into(&self, window: &[f64], out: &mut [f64]) {
        debug_assert_eq!(window.len(), self.lookback);
        debug_assert_eq!(out.len(), self.count());
        out.fill(0.0);
        for (j, &u) in window.iter().enumerate() {
            if u == 0.0 {
                continue;
            }
            crate::mat::axpy(u, self.motifs.row(j), out);
        }
    }

    /// Eigenvalue-scaled features `Λ^(1/2) Mᵀ u`, whose dot products
    /// reproduce the reservoir kernel.
    pub fn reservoir_features(&self, window: &[f64]) -> Result<Vec<f64>, MotifError> {
        let mut f = self.project(window)?;
        for (x, &lam) in f.iter_mut().zip(self.eigenvalues.iter()) {
            *x *= sqrt(lam);
        }
        Ok(f)
    }

    /// Projection with per-motif coefficients: `(c_i ⟨m_i, u⟩)_i`.
    /// Coefficients `1` recover [`project`](Self::project); coefficients
    /// `sqrt(eigenvalue)` recover [`reservoir_features`](Self::reservoir_features).
    pub fn scaled_projection(
        &self,
        window: &[f64],
        coefficients: &[f64],
    ) -> Result<Vec<f64>, MotifError> {
        if coefficients.len() != self.count() {
            return Err(MotifError::LengthMismatch {
                expected: self.count(),
                got: coefficients.len(),
            });
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(MotifError::Numerics(NumericsError::NonFinite));
        }
        let mut f = self.project(window)?;
        for (x, &c) in f.iter_mut().zip(coefficients.iter()) {
            *x *= c;
        }
        Ok(f)
    }

    fn check_window(&self, window: &[f64]) -> Result<(), MotifError> {
        if window.len() != self.lookback {
            return Err(MotifError::LengthMismatch {
                expected: self.lookback,
                got: window.len(),
            });
        }
        Ok(())
    }
}

/// Extracts the motif basis of a reservoir for a given lookback length.
///
/// Motifs are the right singular vectors of the state operator whose
/// squared singular value exceeds `rank_tol` relative to the largest;
/// eigenvalues are the squared singular values. Each motif's first
/// component with magnitude above 1e-12 is made positive, which pins the
/// otherwise arbitrary eigenvector signs.
pub fn extract_motifs(
    spec: &ReservoirSpec,
    lookback: usize,
    rank_tol: f64,
) -> Result<MotifBasis, MotifError> {
    let op = state_operator(spec, lookback)?;
    let svd = thin_svd(op.matrix())?;
    let retained = {
        let s0 = svd.singular_values.first().copied().unwrap_or(0.0);
        if s0 <= 0.0 {
            0
        } else {
            svd.singular_values
                .iter()
                .take_while(|&&s| s * s > rank_tol * s0 * s0)
                .count()
        }
    };
    let mut motifs = Mat::zeros(lookback, retained);
    let mut eigenvalues = Vec::with_capacity(retained);
    for j in 0..retained {
        let mut col = svd.v.col_copy(j);
        if let Some(first) = col.iter().find(|x| abs(**x) > SIGN_TOL) {
            if *first < 0.0 {
                for x in col.iter_mut() {
                    *x = -*x;
                }
            }
        }
        motifs.set_col(j, &col);
        let s = svd.singular_values[j];
        eigenvalues.push(s * s);
    }
    Ok(MotifBasis {
        motifs,
        eigenvalues,
        lookback,
        spec: spec.clone(),
        rank_tol,
    })
}

/// Number of sign changes along a sampled curve, ignoring entries that are
/// exactly zero. A rough frequency measure used when ranking motifs.
pub fn zero_crossings(values: &[f64]) -> usize {
    let mut count = 0;
    let mut prev = 0.0f64;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if prev != 0.0 && (v > 0.0) != (prev > 0.0) {
            count += 1;
        }
        prev = v;
    }
    count
}
