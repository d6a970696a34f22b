//! Linear forecasting on reservoir-derived features.
//!
//! Two feature extractors share one readout machinery: motif projections
//! `Mᵀu` per input channel, and the truncated-history reservoir state
//! `A u` per input channel (the linear reservoir baseline). A single ridge
//! readout emits the full multi-horizon block directly; there is no
//! autoregressive rollout.
//!
//! The intercept is fitted but not regularized, implemented by centering
//! features and targets before solving and restoring the offset afterwards.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::mat::Mat;
use crate::motif::{MotifBasis, MotifError};
use crate::numerics::{ridge_solve, solve_normal_equations, NumericsError};
use crate::scr::{ScrError, StateOperator};
use crate::series::{NormStats, WindowedDataset};

#[derive(Debug, Clone, PartialEq)]
pub enum ForecastError {
    Numerics(NumericsError),
    Motif(MotifError),
    Reservoir(ScrError),
    /// Window shape does not match the extractor.
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    /// Training requires at least one pair.
    EmptyTrainingSet,
    /// The dataset's window geometry differs from the extractor's.
    GeometryMismatch,
}

impl fmt::Display for ForecastError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForecastError::Numerics(e) => write!(f, "numerical error: {e}"),
            ForecastError::Motif(e) => write!(f, "motif error: {e}"),
            ForecastError::Reservoir(e) => write!(f, "reservoir error: {e}"),
            ForecastError::ShapeMismatch {
                expected_rows,
                expected_cols,
                got_rows,
                got_cols,
            } => write!(
                f,
                "window shape {got_rows}x{got_cols} does not match extractor ({expected_rows}x{expected_cols})"
            ),
            ForecastError::EmptyTrainingSet => write!(f, "training set is empty"),
            ForecastError::GeometryMismatch => {
                write!(f, "dataset window geometry does not match the extractor")
            }
        }
    }
}

impl core::error::Error for ForecastError {}

impl From<NumericsError> for ForecastError {
    fn from(e: NumericsError) -> Self {
        ForecastError::Numerics(e)
    }
}

impl From<MotifError> for ForecastError {
    fn from(e: MotifError) -> Self {
        ForecastError::Motif(e)
    }
}

impl From<ScrError> for ForecastError {
    fn from(e: ScrError) -> Self {
        ForecastError::Reservoir(e)
    }
}

/// Which per-channel representation feeds the readout.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureKind {
    /// Motif projections `Mᵀu` (unit coefficients).
    MotifProjection(MotifBasis),
    /// Truncated-history reservoir state `A u`.
    ReservoirState(StateOperator),
}

/// Maps a `lookback x input_channels` window to a feature vector by
/// applying the per-channel representation and concatenating channel
/// blocks in dataset column order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureExtractor {
    kind: FeatureKind,
    input_channels: usize,
}

impl FeatureExtractor {
    pub fn new(kind: FeatureKind, input_channels: usize) -> Self {
        assert!(input_channels > 0, "at least one input channel");
        FeatureExtractor {
            kind,
            input_channels,
        }
    }

    pub fn kind(&self) -> &FeatureKind {
        &self.kind
    }

    pub fn variant_label(&self) -> &'static str {
        match self.kind {
            FeatureKind::MotifProjection(_) => "rmm",
            FeatureKind::ReservoirState(_) => "lrc",
        }
    }

    pub fn input_channels(&self) -> usize {
        self.input_channels
    }

    pub fn lookback(&self) -> usize {
        match &self.kind {
            FeatureKind::MotifProjection(b) => b.lookback(),
            FeatureKind::ReservoirState(op) => op.lookback(),
        }
    }

    /// Features produced per channel.
    pub fn per_channel_dim(&self) -> usize {
        match &self.kind {
            FeatureKind::MotifProjection(b) => b.count(),
            FeatureKind::ReservoirState(op) => op.state_dim(),
        }
    }

    pub fn feature_dim(&self) -> usize {
        self.per_channel_dim() * self.input_channels
    }

    /// The motif basis, when this extractor projects onto motifs.
    pub fn motif_basis(&self) -> Option<&MotifBasis> {
        match &self.kind {
            FeatureKind::MotifProjection(b) => Some(b),
            FeatureKind::ReservoirState(_) => None,
        }
    }

    /// Featurizes an explicit window matrix (`lookback x input_channels`).
    pub fn featurize(&self, window: &Mat) -> Result<Vec<f64>, ForecastError> {
        if window.rows() != self.lookback() || window.cols() != self.input_channels {
            return Err(ForecastError::ShapeMismatch {
                expected_rows: self.lookback(),
                expected_cols: self.input_channels,
                got_rows: window.rows(),
                got_cols: window.cols(),
            });
        }
        let mut out = vec![0.0; self.feature_dim()];
        let mut channel = vec![0.0; self.lookback()];
        for c in 0..self.input_channels {
            for (r, slot) in channel.iter_mut().enumerate() {
                *slot = window.get(r, c);
            }
            let dim = self.per_channel_dim();
            self.featurize_channel(&channel, &mut out[c * dim..(c + 1) * dim]);
        }
        Ok(out)
    }

    fn featurize_channel(&self, window: &[f64], out: &mut [f64]) {
        match &self.kind {
            FeatureKind::MotifProjection(basis) => basis.project_into(window, out),
            FeatureKind::ReservoirState(op) => {
                let m = op.matrix();
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = crate::mat::dot(m.row(i), window);
                }
            }
        }
    }

    /// Featurizes sample `i` of a windowed dataset into `out`
    /// (length `feature_dim`), reusing `scratch` (length `lookback`).
    pub fn featurize_sample(
        &self,
        ds: &WindowedDataset,
        i: usize,
        scratch: &mut [f64],
        out: &mut [f64],
    ) {
        let dim = self.per_channel_dim();
        for c in 0..self.input_channels {
            ds.window_channel_into(i, c, scratch);
            self.featurize_channel(scratch, &mut out[c * dim..(c + 1) * dim]);
        }
    }
}

/// Fitted affine readout from features to the flattened horizon block.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearReadout {
    /// `feature_dim x output_dim` weights.
    pub weights: Mat,
    /// Per-output intercept.
    pub intercept: Vec<f64>,
    /// Ridge coefficient used in the fit.
    pub ridge_lambda: f64,
    /// True when the unregularized fit fell back to the minimal-norm path.
    pub min_norm: bool,
}

/// Run metadata carried by a fitted model so a stored file is
/// self-describing.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelMeta {
    pub dataset: String,
    pub task: String,
    pub horizon: usize,
    pub lookback: usize,
    pub reservoir_size: usize,
    pub cycle_weight: f64,
    pub input_weight: f64,
    pub ridge_lambda: f64,
}

/// A fitted forecaster: feature extractor, readout, normalization
/// statistics of the data it was trained on, and task metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastModel {
    pub extractor: FeatureExtractor,
    pub readout: LinearReadout,
    pub horizon: usize,
    pub output_channels: usize,
    pub norm_stats: Option<NormStats>,
    pub meta: ModelMeta,
}

impl ForecastModel {
    pub fn feature_dim(&self) -> usize {
        self.extractor.feature_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.horizon * self.output_channels
    }

    /// Forecast for an explicit window, reshaped `horizon x output_channels`
    /// (time-major, matching the training targets).
    pub fn predict(&self, window: &Mat) -> Result<Mat, ForecastError> {
        let features = self.extractor.featurize(window)?;
        let mut flat = self.intercept_clone();
        for (j, &f) in features.iter().enumerate() {
            if f == 0.0 {
                continue;
            }
            crate::mat::axpy(f, self.readout.weights.row(j), &mut flat);
        }
        Ok(Mat::from_vec(self.horizon, self.output_channels, flat))
    }

    /// Forecast for sample `i` of a windowed dataset, written flat into
    /// `out` (length `output_dim`).
    pub fn predict_sample_into(
        &self,
        ds: &WindowedDataset,
        i: usize,
        scratch: &mut [f64],
        features: &mut [f64],
        out: &mut [f64],
    ) {
        self.extractor.featurize_sample(ds, i, scratch, features);
        out.copy_from_slice(&self.readout.intercept);
        for (j, &f) in features.iter().enumerate() {
            if f == 0.0 {
                continue;
            }
            crate::mat::axpy(f, self.readout.weights.row(j), out);
        }
    }

    fn intercept_clone(&self) -> Vec<f64> {
        self.readout.intercept.clone()
    }
}

/// Fits a ridge readout over the extractor's features on every training
/// pair. The horizon block is emitted directly (one readout for all
/// `horizon * target_channels` outputs); the intercept is unregularized.
///
/// With `ridge_lambda > 0` the normal equations are accumulated without
/// materializing the design matrix. With `ridge_lambda = 0` the design is
/// materialized so a rank-deficient fit takes the exact SVD minimal-norm
/// path (and is flagged).
pub fn fit(
    train: &WindowedDataset,
    extractor: FeatureExtractor,
    ridge_lambda: f64,
    norm_stats: Option<NormStats>,
    meta: ModelMeta,
) -> Result<ForecastModel, ForecastError> {
    if train.is_empty() {
        return Err(ForecastError::EmptyTrainingSet);
    }
    if train.lookback() != extractor.lookback()
        || train.input_channels() != extractor.input_channels()
    {
        return Err(ForecastError::GeometryMismatch);
    }
    if ridge_lambda < 0.0 || ridge_lambda.is_nan() {
        return Err(ForecastError::Numerics(NumericsError::NegativeRidge(
            ridge_lambda,
        )));
    }
    let n = train.len();
    let p = extractor.feature_dim();
    let q = train.target_dim();

    let (weights, intercept, min_norm) = if ridge_lambda > 0.0 {
        fit_streaming(train, &extractor, ridge_lambda, n, p, q)?
    } else {
        fit_materialized(train, &extractor, n, p, q)?
    };

    Ok(ForecastModel {
        extractor,
        readout: LinearReadout {
            weights,
            intercept,
            ridge_lambda,
            min_norm,
        },
        horizon: train.horizon(),
        output_channels: train.target_channels(),
        norm_stats,
        meta,
    })
}

fn fit_streaming(
    train: &WindowedDataset,
    extractor: &FeatureExtractor,
    ridge_lambda: f64,
    n: usize,
    p: usize,
    q: usize,
) -> Result<(Mat, Vec<f64>, bool), ForecastError> {
    let mut scratch = vec![0.0; extractor.lookback()];
    let mut features = vec![0.0; p];
    let mut target = vec![0.0; q];

    let mut gram = Mat::zeros(p, p);
    let mut cross = Mat::zeros(p, q);
    let mut sum_f = vec![0.0; p];
    let mut sum_y = vec![0.0; q];

    for i in 0..n {
        extractor.featurize_sample(train, i, &mut scratch, &mut features);
        train.target_into(i, &mut target);
        for (s, &f) in sum_f.iter_mut().zip(features.iter()) {
            *s += f;
        }
        for (s, &y) in sum_y.iter_mut().zip(target.iter()) {
            *s += y;
        }
        for a in 0..p {
            let fa = features[a];
            if fa == 0.0 {
                continue;
            }
            crate::mat::axpy(fa, &features[a..], &mut gram.row_mut(a)[a..]);
            crate::mat::axpy(fa, &target, cross.row_mut(a));
        }
    }
    for a in 0..p {
        for b in (a + 1)..p {
            let v = gram.get(a, b);
            gram.set(b, a, v);
        }
    }

    let nf = n as f64;
    let mean_f: Vec<f64> = sum_f.iter().map(|s| s / nf).collect();
    let mean_y: Vec<f64> = sum_y.iter().map(|s| s / nf).collect();
    // center: G - n x̄ x̄ᵀ and C - n x̄ ȳᵀ
    for a in 0..p {
        for b in 0..p {
            let v = gram.get(a, b) - nf * mean_f[a] * mean_f[b];
            gram.set(a, b, v);
        }
        for c in 0..q {
            let v = cross.get(a, c) - nf * mean_f[a] * mean_y[c];
            cross.set(a, c, v);
        }
    }

    let sol = solve_normal_equations(&gram, &cross, ridge_lambda)?;
    let intercept = intercept_from(&sol.coefficients, &mean_f, &mean_y);
    Ok((sol.coefficients, intercept, sol.min_norm_fallback))
}

fn fit_materialized(
    train: &WindowedDataset,
    extractor: &FeatureExtractor,
    n: usize,
    p: usize,
    q: usize,
) -> Result<(Mat, Vec<f64>, bool), ForecastError> {
    let mut scratch = vec![0.0; extractor.lookback()];
    let mut x = Mat::zeros(n, p);
    let mut y = Mat::zeros(n, q);
    for i in 0..n {
        extractor.featurize_sample(train, i, &mut scratch, x.row_mut(i));
        train.target_into(i, y.row_mut(i));
    }
    let mean_f = crate::numerics::column_means(&x);
    let mean_y = crate::numerics::column_means(&y);
    for i in 0..n {
        for (v, m) in x.row_mut(i).iter_mut().zip(mean_f.iter()) {
            *v -= m;
        }
        for (v, m) in y.row_mut(i).iter_mut().zip(mean_y.iter()) {
            *v -= m;
        }
    }
    let sol = ridge_solve(&x, &y, 0.0)?;
    let intercept = intercept_from(&sol.coefficients, &mean_f, &mean_y);
    Ok((sol.coefficients, intercept, sol.min_norm_fallback))
}

fn intercept_from(weights: &Mat, mean_f: &[f64], mean_y: &[f64]) -> Vec<f64> {
    let mut intercept = mean_y.to_vec();
    for (j, &mf) in mean_f.iter().enumerate() {
        if mf == 0.0 {
            continue;
        }
        for (b, &w) in intercept.iter_mut().zip(weights.row(j).iter()) {
            *b -= mf * w;
        }
    }
    intercept
}
