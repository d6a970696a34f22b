//! Metrics, validation grid search and motif-relevance analysis.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmath::abs;
use crate::forecast::{
    fit, FeatureExtractor, FeatureKind, ForecastError, ForecastModel, ModelMeta,
};
use crate::motif::extract_motifs;
use crate::scr::{state_operator, ReservoirSpec};
use crate::series::{NormStats, Split, WindowedDataset};

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// Metrics need at least one element.
    EmptyInput,
    /// Prediction and target shapes differ.
    ShapeMismatch,
    /// Grid must contain at least one point per axis.
    EmptyGrid,
    /// Underlying failure, annotated with the grid point that caused it.
    AtGridPoint {
        cycle_weight: f64,
        input_weight: f64,
        source: ForecastError,
    },
    Forecast(ForecastError),
    /// Relevance analysis requires a motif-projection model.
    NotAMotifModel,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::EmptyInput => write!(f, "metrics require at least one element"),
            EvalError::ShapeMismatch => write!(f, "prediction and target shapes differ"),
            EvalError::EmptyGrid => write!(f, "hyperparameter grid is empty"),
            EvalError::AtGridPoint {
                cycle_weight,
                input_weight,
                source,
            } => write!(
                f,
                "failure at grid point (cycle_weight={cycle_weight}, input_weight={input_weight}): {source}"
            ),
            EvalError::Forecast(e) => write!(f, "{e}"),
            EvalError::NotAMotifModel => {
                write!(f, "relevance analysis requires a motif-projection model")
            }
        }
    }
}

impl core::error::Error for EvalError {}

impl From<ForecastError> for EvalError {
    fn from(e: ForecastError) -> Self {
        EvalError::Forecast(e)
    }
}

/// Mean squared error over all elements.
pub fn mse(pred: &[f64], target: &[f64]) -> Result<f64, EvalError> {
    if pred.len() != target.len() {
        return Err(EvalError::ShapeMismatch);
    }
    if pred.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut s = 0.0;
    for (p, t) in pred.iter().zip(target.iter()) {
        let d = p - t;
        s += d * d;
    }
    Ok(s / pred.len() as f64)
}

/// Mean absolute error over all elements.
pub fn mae(pred: &[f64], target: &[f64]) -> Result<f64, EvalError> {
    if pred.len() != target.len() {
        return Err(EvalError::ShapeMismatch);
    }
    if pred.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut s = 0.0;
    for (p, t) in pred.iter().zip(target.iter()) {
        s += abs(p - t);
    }
    Ok(s / pred.len() as f64)
}

/// One evaluation record: configuration, split and the two error metrics.
/// `wall_seconds` is informational and excluded from deterministic exports.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub dataset: String,
    pub task: String,
    pub variant: String,
    pub horizon: usize,
    pub lookback: usize,
    pub reservoir_size: usize,
    pub cycle_weight: f64,
    pub input_weight: f64,
    pub ridge_lambda: f64,
    pub split: Split,
    pub mse: f64,
    pub mae: f64,
    pub wall_seconds: f64,
}

/// Evaluates a fitted model over every window of a dataset, streaming.
/// Errors are averaged over all windows, horizon steps and channels.
pub fn evaluate(model: &ForecastModel, ds: &WindowedDataset) -> Result<(f64, f64), EvalError> {
    if ds.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    if ds.target_dim() != model.output_dim()
        || ds.lookback() != model.extractor.lookback()
        || ds.input_channels() != model.extractor.input_channels()
    {
        return Err(EvalError::ShapeMismatch);
    }
    let q = ds.target_dim();
    let mut scratch = vec![0.0; ds.lookback()];
    let mut features = vec![0.0; model.feature_dim()];
    let mut pred = vec![0.0; q];
    let mut target = vec![0.0; q];
    let mut sq = 0.0;
    let mut ab = 0.0;
    for i in 0..ds.len() {
        model.predict_sample_into(ds, i, &mut scratch, &mut features, &mut pred);
        ds.target_into(i, &mut target);
        for (p, t) in pred.iter().zip(target.iter()) {
            let d = p - t;
            sq += d * d;
            ab += abs(d);
        }
    }
    let count = (ds.len() * q) as f64;
    Ok((sq / count, ab / count))
}

/// Which feature variant a run trains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelVariant {
    /// Motif projections with a linear readout.
    MotifReadout,
    /// Linear reservoir baseline: readout on the truncated-history state.
    ReservoirReadout,
}

impl ModelVariant {
    pub fn label(&self) -> &'static str {
        match self {
            ModelVariant::MotifReadout => "rmm",
            ModelVariant::ReservoirReadout => "lrc",
        }
    }
}

/// Hyperparameter grid searched on the validation split.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperGrid {
    pub cycle_weights: Vec<f64>,
    pub input_weights: Vec<f64>,
}

impl HyperGrid {
    /// The benchmark grid: four cycle weights by four input weights.
    pub fn standard() -> Self {
        HyperGrid {
            cycle_weights: vec![0.9, 0.99, 0.999, 0.9999],
            input_weights: vec![0.01, 0.05, 0.1, 1.0],
        }
    }
}

/// Static configuration of one grid-search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub dataset: String,
    pub task: String,
    pub variant: ModelVariant,
    pub horizon: usize,
    pub lookback: usize,
    pub reservoir_size: usize,
    pub ridge_lambda: f64,
    pub rank_tol: f64,
    pub refit_with_val: bool,
}

/// Grid-search outcome: every validation report in grid order, the
/// selected point, the test report of the refit model, and the model.
#[derive(Debug, Clone)]
pub struct GridSearchOutcome {
    pub validation_reports: Vec<EvalReport>,
    pub best_cycle_weight: f64,
    pub best_input_weight: f64,
    pub test_report: EvalReport,
    pub model: ForecastModel,
}

/// The window sets a search runs over. `train_val` is used for the final
/// refit when `refit_with_val` is set.
pub struct SplitWindows {
    pub train: WindowedDataset,
    pub val: WindowedDataset,
    pub test: WindowedDataset,
    pub train_val: Option<WindowedDataset>,
}

fn build_extractor(
    variant: ModelVariant,
    spec: &ReservoirSpec,
    lookback: usize,
    rank_tol: f64,
    input_channels: usize,
) -> Result<FeatureExtractor, ForecastError> {
    let kind = match variant {
        ModelVariant::MotifReadout => {
            FeatureKind::MotifProjection(extract_motifs(spec, lookback, rank_tol)?)
        }
        ModelVariant::ReservoirReadout => {
            FeatureKind::ReservoirState(state_operator(spec, lookback)?)
        }
    };
    Ok(FeatureExtractor::new(kind, input_channels))
}

/// Fits one configuration on `fit_on` and evaluates it on `eval_on`.
pub fn fit_and_evaluate(
    cfg: &SearchConfig,
    cycle_weight: f64,
    input_weight: f64,
    fit_on: &WindowedDataset,
    eval_on: &WindowedDataset,
    norm_stats: Option<&NormStats>,
) -> Result<(ForecastModel, EvalReport), EvalError> {
    let start = now_seconds();
    let annotate = |source: ForecastError| EvalError::AtGridPoint {
        cycle_weight,
        input_weight,
        source,
    };
    let spec = ReservoirSpec::new(cfg.reservoir_size, cycle_weight, input_weight)
        .map_err(|e| annotate(ForecastError::Reservoir(e)))?;
    let extractor = build_extractor(
        cfg.variant,
        &spec,
        cfg.lookback,
        cfg.rank_tol,
        fit_on.input_channels(),
    )
    .map_err(annotate)?;
    let meta = ModelMeta {
        dataset: cfg.dataset.clone(),
        task: cfg.task.clone(),
        horizon: cfg.horizon,
        lookback: cfg.lookback,
        reservoir_size: cfg.reservoir_size,
        cycle_weight,
        input_weight,
        ridge_lambda: cfg.ridge_lambda,
    };
    let model = fit(
        fit_on,
        extractor,
        cfg.ridge_lambda,
        norm_stats.cloned(),
        meta,
    )
    .map_err(annotate)?;
    let (mse, mae) = evaluate(&model, eval_on)?;
    let report = EvalReport {
        dataset: cfg.dataset.clone(),
        task: cfg.task.clone(),
        variant: cfg.variant.label().into(),
        horizon: cfg.horizon,
        lookback: cfg.lookback,
        reservoir_size: cfg.reservoir_size,
        cycle_weight,
        input_weight,
        ridge_lambda: cfg.ridge_lambda,
        split: eval_on.split(),
        mse,
        mae,
        wall_seconds: now_seconds() - start,
    };
    Ok((model, report))
}

/// Exhaustive grid search on the validation split.
///
/// Every `(cycle_weight, input_weight)` point is fitted on train and
/// scored on validation; the point with minimal validation MSE wins, ties
/// broken toward the smaller cycle weight, then the smaller input weight
/// (a total order, so the outcome does not depend on grid ordering). The
/// winner is refit on train (or train+validation when configured) and
/// scored on test.
pub fn grid_search(
    cfg: &SearchConfig,
    grid: &HyperGrid,
    windows: &SplitWindows,
    norm_stats: Option<&NormStats>,
) -> Result<GridSearchOutcome, EvalError> {
    if grid.cycle_weights.is_empty() || grid.input_weights.is_empty() {
        return Err(EvalError::EmptyGrid);
    }
    let points: Vec<(f64, f64)> = grid
        .cycle_weights
        .iter()
        .flat_map(|&rho| grid.input_weights.iter().map(move |&rin| (rho, rin)))
        .collect();

    let validation_reports = run_grid_points(cfg, &points, windows, norm_stats)?;

    let mut best = &validation_reports[0];
    for report in &validation_reports[1..] {
        let candidate = (report.mse, report.cycle_weight, report.input_weight);
        let incumbent = (best.mse, best.cycle_weight, best.input_weight);
        if candidate < incumbent {
            best = report;
        }
    }
    let (best_cycle_weight, best_input_weight) = (best.cycle_weight, best.input_weight);

    let refit_on = if cfg.refit_with_val {
        windows.train_val.as_ref().unwrap_or(&windows.train)
    } else {
        &windows.train
    };
    let (model, test_report) = fit_and_evaluate(
        cfg,
        best_cycle_weight,
        best_input_weight,
        refit_on,
        &windows.test,
        norm_stats,
    )?;

    Ok(GridSearchOutcome {
        validation_reports,
        best_cycle_weight,
        best_input_weight,
        test_report,
        model,
    })
}

#[cfg(feature = "parallel")]
fn run_grid_points(
    cfg: &SearchConfig,
    points: &[(f64, f64)],
    windows: &SplitWindows,
    norm_stats: Option<&NormStats>,
) -> Result<Vec<EvalReport>, EvalError> {
    use rayon::prelude::*;
    points
        .par_iter()
        .map(|&(rho, rin)| {
            fit_and_evaluate(cfg, rho, rin, &windows.train, &windows.val, norm_stats)
                .map(|(_, report)| report)
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_grid_points(
    cfg: &SearchConfig,
    points: &[(f64, f64)],
    windows: &SplitWindows,
    norm_stats: Option<&NormStats>,
) -> Result<Vec<EvalReport>, EvalError> {
    points
        .iter()
        .map(|&(rho, rin)| {
            fit_and_evaluate(cfg, rho, rin, &windows.train, &windows.val, norm_stats)
                .map(|(_, report)| report)
        })
        .collect()
}

/// Per-motif relevance, measured from readout weight magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct RelevanceProfile {
    /// Score per motif index (Euclidean norm of the weight rows attached
    /// to that motif across channels and output dimensions).
    pub scores: Vec<f64>,
    /// Motif indices sorted by descending score.
    pub order: Vec<usize>,
}

impl RelevanceProfile {
    pub fn top(&self, k: usize) -> &[usize] {
        &self.order[..k.min(self.order.len())]
    }
}

/// Ranks motifs by the magnitude of the readout weights attached to them.
/// Weight rows of channel blocks sharing a motif index are aggregated
/// together. Rejects models built on raw reservoir states, which have no
/// motif semantics.
pub fn motif_relevance(model: &ForecastModel) -> Result<RelevanceProfile, EvalError> {
    let basis = model
        .extractor
        .motif_basis()
        .ok_or(EvalError::NotAMotifModel)?;
    let per_channel = basis.count();
    let channels = model.extractor.input_channels();
    let weights = &model.readout.weights;
    let mut scores = vec![0.0; per_channel];
    for c in 0..channels {
        for m in 0..per_channel {
            let row = weights.row(c * per_channel + m);
            scores[m] += crate::mat::dot(row, row);
        }
    }
    for s in scores.iter_mut() {
        *s = crate::fmath::sqrt(*s);
    }
    let mut order: Vec<usize> = (0..per_channel).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    Ok(RelevanceProfile { scores, order })
}

#[cfg(feature = "std")]
fn now_seconds() -> f64 {
    use std::time::{SystemTime, UNIX_EPOCH};
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

#[cfg(not(feature = "std"))]
fn now_seconds() -> f64 {
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forecast::LinearReadout;
    use crate::mat::Mat;
    use crate::motif::{extract_motifs, DEFAULT_RANK_TOL};
    use crate::series::{make_windows, SplitBounds, TimeSeries};
    use alloc::string::ToString;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn metrics_hand_values() {
        assert_eq!(mse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(mae(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        // differences (1, -1)
        assert_eq!(mse(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(mae(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        // differences (3, 0, 0)
        assert_eq!(mse(&[3.0, 0.0, 0.0], &[0.0, 0.0, 0.0]).unwrap(), 3.0);
        assert_eq!(mae(&[3.0, 0.0, 0.0], &[0.0, 0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn metrics_reject_empty_and_mismatched() {
        assert!(matches!(mse(&[], &[]), Err(EvalError::EmptyInput)));
        assert!(matches!(mae(&[1.0], &[]), Err(EvalError::ShapeMismatch)));
    }

    fn search_cfg(horizon: usize, lookback: usize, size: usize) -> SearchConfig {
        SearchConfig {
            dataset: "toy".to_string(),
            task: "univariate".to_string(),
            variant: ModelVariant::MotifReadout,
            horizon,
            lookback,
            reservoir_size: size,
            ridge_lambda: 1e-4,
            rank_tol: DEFAULT_RANK_TOL,
            refit_with_val: false,
        }
    }

    fn windows_from(
        values: Vec<f64>,
        bounds: SplitBounds,
        lookback: usize,
        horizon: usize,
    ) -> SplitWindows {
        let ts = TimeSeries::new(
            Mat::from_vec(values.len(), 1, values),
            vec!["x".to_string()],
            "1h".to_string(),
            "toy".to_string(),
        )
        .unwrap();
        SplitWindows {
            train: make_windows(&ts, &bounds, Split::Train, lookback, horizon, &[0], &[0]).unwrap(),
            val: make_windows(&ts, &bounds, Split::Val, lookback, horizon, &[0], &[0]).unwrap(),
            test: make_windows(&ts, &bounds, Split::Test, lookback, horizon, &[0], &[0]).unwrap(),
            train_val: Some(
                make_windows(&ts, &bounds, Split::TrainVal, lookback, horizon, &[0], &[0]).unwrap(),
            ),
        }
    }

    #[test]
    fn grid_produces_one_report_per_point_plus_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let t = 220;
        let values: Vec<f64> = (0..t).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let bounds = SplitBounds::new(150, 180, 220).unwrap();
        let windows = windows_from(values, bounds, 12, 2);
        let cfg = search_cfg(2, 12, 4);
        let grid = HyperGrid {
            cycle_weights: vec![0.5, 0.9, 0.99, 0.999],
            input_weights: vec![0.05, 0.1, 0.5, 1.0],
        };
        let out = grid_search(&cfg, &grid, &windows, None).unwrap();
        assert_eq!(out.validation_reports.len(), 16);
        assert_eq!(out.test_report.split, Split::Test);
        assert!(out.test_report.mse.is_finite() && out.test_report.mse >= 0.0);
        assert!(out.test_report.mae >= 0.0);
    }

    #[test]
    fn tie_break_prefers_smaller_cycle_then_input_weight() {
        // all-zero targets: every grid point scores exactly zero validation
        // MSE, so the declared tie-break decides
        let t = 120;
        let mut values = Vec::with_capacity(2 * t);
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..t {
            values.push(rng.gen_range(-1.0..1.0));
            values.push(0.0);
        }
        let ts = TimeSeries::new(
            Mat::from_vec(t, 2, values),
            vec!["x".to_string(), "y".to_string()],
            "1h".to_string(),
            "toy".to_string(),
        )
        .unwrap();
        let bounds = SplitBounds::new(80, 100, 120).unwrap();
        let windows = SplitWindows {
            train: make_windows(&ts, &bounds, Split::Train, 8, 1, &[0], &[1]).unwrap(),
            val: make_windows(&ts, &bounds, Split::Val, 8, 1, &[0], &[1]).unwrap(),
            test: make_windows(&ts, &bounds, Split::Test, 8, 1, &[0], &[1]).unwrap(),
            train_val: None,
        };
        let cfg = search_cfg(1, 8, 3);
        let grid = HyperGrid {
            cycle_weights: vec![0.99, 0.9, 0.5],
            input_weights: vec![1.0, 0.1],
        };
        let out = grid_search(&cfg, &grid, &windows, None).unwrap();
        assert_eq!(out.best_cycle_weight, 0.5);
        assert_eq!(out.best_input_weight, 0.1);
    }

    #[test]
    fn grid_selection_invariant_under_reordering() {
        let mut rng = ChaCha8Rng::seed_from_u64(85);
        let t = 200;
        let values: Vec<f64> = (0..t)
            .map(|i| (i as f64 * 0.37).sin() + 0.2 * rng.gen_range(-1.0..1.0))
            .collect();
        let bounds = SplitBounds::new(140, 170, 200).unwrap();
        let windows = windows_from(values, bounds, 10, 1);
        let cfg = search_cfg(1, 10, 4);
        let forward = HyperGrid {
            cycle_weights: vec![0.5, 0.9, 0.99],
            input_weights: vec![0.1, 1.0],
        };
        let backward = HyperGrid {
            cycle_weights: vec![0.99, 0.9, 0.5],
            input_weights: vec![1.0, 0.1],
        };
        let a = grid_search(&cfg, &forward, &windows, None).unwrap();
        let b = grid_search(&cfg, &backward, &windows, None).unwrap();
        assert_eq!(a.best_cycle_weight, b.best_cycle_weight);
        assert_eq!(a.best_input_weight, b.best_input_weight);
        assert_eq!(a.test_report.mse, b.test_report.mse);
    }

    #[test]
    fn short_memory_generator_selects_smallest_cycle_weight() {
        // target = last value + noise: only the most recent sample matters,
        // so the fastest-decaying memory wins validation
        let mut rng = ChaCha8Rng::seed_from_u64(87);
        let t = 400;
        let mut values = Vec::with_capacity(2 * t);
        let mut x_prev = 0.0;
        for _ in 0..t {
            let x: f64 = rng.gen_range(-1.0..1.0);
            let y = x_prev + 0.01 * rng.gen_range(-1.0..1.0);
            values.push(x);
            values.push(y);
            x_prev = x;
        }
        let ts = TimeSeries::new(
            Mat::from_vec(t, 2, values),
            vec!["x".to_string(), "y".to_string()],
            "1h".to_string(),
            "toy".to_string(),
        )
        .unwrap();
        let bounds = SplitBounds::new(280, 340, 400).unwrap();
        let lookback = 16;
        let windows = SplitWindows {
            train: make_windows(&ts, &bounds, Split::Train, lookback, 1, &[0], &[1]).unwrap(),
            val: make_windows(&ts, &bounds, Split::Val, lookback, 1, &[0], &[1]).unwrap(),
            test: make_windows(&ts, &bounds, Split::Test, lookback, 1, &[0], &[1]).unwrap(),
            train_val: None,
        };
        let mut cfg = search_cfg(1, lookback, 6);
        cfg.ridge_lambda = 1e-6;
        let grid = HyperGrid {
            cycle_weights: vec![0.1, 0.9, 0.99],
            input_weights: vec![1.0],
        };
        let out = grid_search(&cfg, &grid, &windows, None).unwrap();
        assert_eq!(out.best_cycle_weight, 0.1);
    }

    #[test]
    fn relevance_singles_out_nonzero_motif_rows() {
        let spec = ReservoirSpec::new(5, 0.8, 1.0).unwrap();
        let basis = extract_motifs(&spec, 12, DEFAULT_RANK_TOL).unwrap();
        let nm = basis.count();
        let mut weights = Mat::zeros(nm, 2);
        weights.set(3, 0, 2.0);
        weights.set(1, 0, 1.0);
        weights.set(1, 1, 0.0);
        let model = ForecastModel {
            extractor: FeatureExtractor::new(FeatureKind::MotifProjection(basis), 1),
            readout: LinearReadout {
                weights,
                intercept: vec![0.0; 2],
                ridge_lambda: 1e-4,
                min_norm: false,
            },
            horizon: 2,
            output_channels: 1,
            norm_stats: None,
            meta: ModelMeta {
                dataset: "toy".to_string(),
                task: "univariate".to_string(),
                horizon: 2,
                lookback: 12,
                reservoir_size: 5,
                cycle_weight: 0.8,
                input_weight: 1.0,
                ridge_lambda: 1e-4,
            },
        };
        let profile = motif_relevance(&model).unwrap();
        assert_eq!(profile.order[0], 3);
        assert_eq!(profile.order[1], 1);
        assert!((profile.scores[3] - 2.0).abs() < 1e-15);
        assert!((profile.scores[1] - 1.0).abs() < 1e-15);
        assert_eq!(profile.top(2), &[3, 1]);
    }

    #[test]
    fn relevance_rejects_reservoir_state_models() {
        let spec = ReservoirSpec::new(4, 0.8, 1.0).unwrap();
        let op = crate::scr::state_operator(&spec, 10).unwrap();
        let model = ForecastModel {
            extractor: FeatureExtractor::new(FeatureKind::ReservoirState(op), 1),
            readout: LinearReadout {
                weights: Mat::zeros(4, 1),
                intercept: vec![0.0],
                ridge_lambda: 1e-4,
                min_norm: false,
            },
            horizon: 1,
            output_channels: 1,
            norm_stats: None,
            meta: ModelMeta {
                dataset: "toy".to_string(),
                task: "univariate".to_string(),
                horizon: 1,
                lookback: 10,
                reservoir_size: 4,
                cycle_weight: 0.8,
                input_weight: 1.0,
                ridge_lambda: 1e-4,
            },
        };
        assert!(matches!(
            motif_relevance(&model),
            Err(EvalError::NotAMotifModel)
        ));
    }

    #[test]
    fn relevance_aggregates_across_channels() {
        let spec = ReservoirSpec::new(4, 0.8, 1.0).unwrap();
        let basis = extract_motifs(&spec, 9, DEFAULT_RANK_TOL).unwrap();
        let nm = basis.count();
        assert!(nm >= 2);
        let mut weights = Mat::zeros(2 * nm, 1);
        weights.set(0, 0, 3.0); // channel 0, motif 0
        weights.set(nm, 0, 4.0); // channel 1, motif 0
        let model = ForecastModel {
            extractor: FeatureExtractor::new(FeatureKind::MotifProjection(basis), 2),
            readout: LinearReadout {
                weights,
                intercept: vec![0.0],
                ridge_lambda: 1e-4,
                min_norm: false,
            },
            horizon: 1,
            output_channels: 1,
            norm_stats: None,
            meta: ModelMeta {
                dataset: "toy".to_string(),
                task: "multivariate".to_string(),
                horizon: 1,
                lookback: 9,
                reservoir_size: 4,
                cycle_weight: 0.8,
                input_weight: 1.0,
                ridge_lambda: 1e-4,
            },
        };
        let profile = motif_relevance(&model).unwrap();
        assert!((profile.scores[0] - 5.0).abs() < 1e-12); // sqrt(3^2 + 4^2)
    }

    #[test]
    fn identical_prediction_and_target_reports_zero() {
        // readout with zero weights and intercepts on zero targets
        let t = 60;
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let mut values = Vec::with_capacity(2 * t);
        for _ in 0..t {
            values.push(rng.gen_range(-1.0..1.0));
            values.push(0.0);
        }
        let ts = TimeSeries::new(
            Mat::from_vec(t, 2, values),
            vec!["x".to_string(), "y".to_string()],
            "1h".to_string(),
            "toy".to_string(),
        )
        .unwrap();
        let bounds = SplitBounds::new(t, t, t).unwrap();
        let ds = make_windows(&ts, &bounds, Split::Train, 6, 1, &[0], &[1]).unwrap();
        let spec = ReservoirSpec::new(3, 0.8, 1.0).unwrap();
        let basis = extract_motifs(&spec, 6, DEFAULT_RANK_TOL).unwrap();
        let model = fit(
            &ds,
            FeatureExtractor::new(FeatureKind::MotifProjection(basis), 1),
            1e-4,
            None,
            ModelMeta {
                dataset: "toy".to_string(),
                task: "univariate".to_string(),
                horizon: 1,
                lookback: 6,
                reservoir_size: 3,
                cycle_weight: 0.8,
                input_weight: 1.0,
                ridge_lambda: 1e-4,
            },
        )
        .unwrap();
        let (m, a) = evaluate(&model, &ds).unwrap();
        assert!(m < 1e-20 && a < 1e-10);
    }
}
