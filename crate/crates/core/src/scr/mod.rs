//! Simple cycle reservoir construction and its kernel objects.
//!
//! The reservoir is a driven linear system `x(t) = W x(t-1) + u(t) w` whose
//! coupling `W` is a single directed cycle with uniform weight. `W` is never
//! stored densely: applying it is a cyclic shift followed by scaling, which
//! is exact and O(N). The input vector `w` has entries of equal magnitude
//! with a fixed aperiodic sign pattern derived from the decimal expansion
//! of pi.
//!
//! For a lookback length `tau`, the state reached from zero after reading a
//! window is a linear image of that window. [`state_operator`] materializes
//! that map; [`metric_tensor`] forms its Gram matrix, whose eigenvectors are
//! extracted as motifs by the `motif` module.

mod pi_digits;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::mat::Mat;

/// Errors from reservoir construction and simulation.
#[derive(Debug, Clone, PartialEq)]
pub enum ScrError {
    /// Reservoir size must be at least one.
    EmptyReservoir,
    /// Requested more sign-pattern entries than the bundled digit table holds.
    InsufficientDigits { requested: usize, available: usize },
    /// Cycle weight must satisfy `0 < cycle_weight < 1`.
    CycleWeightOutOfRange(f64),
    /// Input weight must be positive and finite.
    InputWeightOutOfRange(f64),
    /// Vector length does not match the reservoir state dimension.
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for ScrError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScrError::EmptyReservoir => write!(f, "insufficient/invalid size: reservoir size must be >= 1"),
            ScrError::InsufficientDigits { requested, available } => write!(
                f,
                "insufficient digits: sign pattern of length {requested} exceeds the bundled table of {available} digits"
            ),
            ScrError::CycleWeightOutOfRange(v) => {
                write!(f, "cycle weight {v} outside the open interval (0, 1)")
            }
            ScrError::InputWeightOutOfRange(v) => write!(f, "input weight {v} must be positive"),
            ScrError::DimensionMismatch { expected, got } => {
                write!(f, "expected vector of length {expected}, got {got}")
            }
        }
    }
}

impl core::error::Error for ScrError {}

/// Deterministic aperiodic sign pattern of length `n`.
///
/// Entry `i` is `+1` when the i-th fractional decimal digit of pi is in
/// `0..=4` and `-1` otherwise. The digit table is bundled and verified, so
/// the pattern is identical on every platform.
pub fn sign_pattern(n: usize) -> Result<Vec<f64>, ScrError> {
    let digits = pi_digits::PI_FRACTIONAL_DIGITS.as_bytes();
    if n == 0 {
        return Err(ScrError::EmptyReservoir);
    }
    if n > digits.len() {
        return Err(ScrError::InsufficientDigits {
            requested: n,
            available: digits.len(),
        });
    }
    Ok(digits[..n]
        .iter()
        .map(|&d| if d <= b'4' { 1.0 } else { -1.0 })
        .collect())
}

/// A simple cycle reservoir: size, cycle weight, input weight and the
/// derived sign pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ReservoirSpec {
    size: usize,
    cycle_weight: f64,
    input_weight: f64,
    sign_pattern: Vec<f64>,
}

impl ReservoirSpec {
    /// Validates parameter ranges and derives the sign pattern.
    pub fn new(size: usize, cycle_weight: f64, input_weight: f64) -> Result<Self, ScrError> {
        if !(cycle_weight > 0.0 && cycle_weight < 1.0) {
            return Err(ScrError::CycleWeightOutOfRange(cycle_weight));
        }
        if !(input_weight > 0.0 && input_weight.is_finite()) {
            return Err(ScrError::InputWeightOutOfRange(input_weight));
        }
        let sign_pattern = sign_pattern(size)?;
        Ok(ReservoirSpec {
            size,
            cycle_weight,
            input_weight,
            sign_pattern,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cycle_weight(&self) -> f64 {
        self.cycle_weight
    }

    pub fn input_weight(&self) -> f64 {
        self.input_weight
    }

    pub fn signs(&self) -> &[f64] {
        &self.sign_pattern
    }

    /// Input coupling vector `w`: input weight times the sign pattern.
    pub fn input_vector(&self) -> Vec<f64> {
        self.sign_pattern
            .iter()
            .map(|s| s * self.input_weight)
            .collect()
    }

    /// Applies the cycle coupling: basis vector `i` maps to
    /// `cycle_weight` times basis vector `(i + 1) mod size`.
    pub fn apply_cycle(&self, x: &[f64]) -> Result<Vec<f64>, ScrError> {
        if x.len() != self.size {
            return Err(ScrError::DimensionMismatch {
                expected: self.size,
                got: x.len(),
            });
        }
        let n = self.size;
        let mut out = vec![0.0; n];
        for j in 0..n {
            out[j] = self.cycle_weight * x[(j + n - 1) % n];
        }
        Ok(out)
    }

    /// One update step `x <- W x + u w`, in place.
    fn advance(&self, state: &mut [f64], input: f64) {
        let n = self.size;
        let rho = self.cycle_weight;
        // W x is a rotation by one position scaled by rho; rotate in place.
        let last = state[n - 1];
        for j in (1..n).rev() {
            state[j] = rho * state[j - 1];
        }
        state[0] = rho * last;
        for (s, sign) in state.iter_mut().zip(self.sign_pattern.iter()) {
            *s += input * self.input_weight * sign;
        }
    }
}

/// Drives the reservoir over `inputs` starting from `initial_state`,
/// returning the state trajectory as a `T x N` matrix (one row per step).
pub fn reservoir_states(
    spec: &ReservoirSpec,
    inputs: &[f64],
    initial_state: &[f64],
) -> Result<Mat, ScrError> {
    if initial_state.len() != spec.size {
        return Err(ScrError::DimensionMismatch {
            expected: spec.size,
            got: initial_state.len(),
        });
    }
    let mut traj = Mat::zeros(inputs.len(), spec.size);
    let mut state = initial_state.to_vec();
    for (t, &u) in inputs.iter().enumerate() {
        spec.advance(&mut state, u);
        traj.row_mut(t).copy_from_slice(&state);
    }
    Ok(traj)
}

/// The `N x tau` linear map from a lookback window to the reservoir state
/// reached from zero after reading it. Column `j` (0-based) holds
/// `W^(tau-1-j) w`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateOperator {
    matrix: Mat,
    lookback: usize,
}

impl StateOperator {
    /// Reassembles an operator from stored fields (model loading); the
    /// float payload is taken verbatim.
    pub fn from_parts(matrix: Mat, lookback: usize) -> Result<Self, ScrError> {
        if matrix.cols() != lookback {
            return Err(ScrError::DimensionMismatch {
                expected: lookback,
                got: matrix.cols(),
            });
        }
        Ok(StateOperator { matrix, lookback })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn lookback(&self) -> usize {
        self.lookback
    }

    pub fn state_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Maps a window to the reservoir state: `A u`.
    pub fn apply(&self, window: &[f64]) -> Result<Vec<f64>, ScrError> {
        if window.len() != self.lookback {
            return Err(ScrError::DimensionMismatch {
                expected: self.lookback,
                got: window.len(),
            });
        }
        Ok(self.matrix.mul_vec(window))
    }
}

/// Builds the window-to-state operator in O(N·tau) arithmetic using the
/// closed form `W^k w = rho^k * (w rotated by k positions)`.
pub fn state_operator(spec: &ReservoirSpec, lookback: usize) -> Result<StateOperator, ScrError> {
    if lookback == 0 {
        return Err(ScrError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let n = spec.size;
    let w = spec.input_vector();
    let mut matrix = Mat::zeros(n, lookback);
    // Power k = tau-1-j decreases along columns; the last column is w itself.
    let mut scale = 1.0;
    for k in 0..lookback {
        let j = lookback - 1 - k;
        for i in 0..n {
            // entry i of W^k w = rho^k * w[(i - k) mod n]
            let src = (i + n - (k % n)) % n;
            matrix.set(i, j, scale * w[src]);
        }
        scale *= spec.cycle_weight;
    }
    Ok(StateOperator { matrix, lookback })
}

/// The `tau x tau` Gram matrix of the state operator: the metric tensor of
/// the reservoir kernel on raw windows.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    matrix: Mat,
}

impl MetricTensor {
    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Kernel value `uᵀ Q v` on raw windows.
    pub fn kernel(&self, u: &[f64], v: &[f64]) -> Result<f64, ScrError> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(ScrError::DimensionMismatch {
                expected: n,
                got: if u.len() != n { u.len() } else { v.len() },
            });
        }
        Ok(crate::mat::dot(u, &self.matrix.mul_vec(v)))
    }
}

/// Forms `Q = AᵀA`. Symmetry is exact: only one triangle is computed and
/// mirrored.
pub fn metric_tensor(operator: &StateOperator) -> MetricTensor {
    MetricTensor {
        matrix: operator.matrix.gram(),
    }
}
