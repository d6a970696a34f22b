//! Published comparison numbers for the benchmark tables.
//!
//! Univariate rows are the results reported by Zhou et al., "Informer:
//! Beyond Efficient Transformer for Long Sequence Time-Series
//! Forecasting" (AAAI 2021); multivariate rows are from Zhou et al.,
//! "FEDformer: Frequency Enhanced Decomposed Transformer for Long-term
//! Series Forecasting" (ICML 2022). We do not regenerate these numbers;
//! they are comparison context printed next to our own results.

pub struct Baseline {
    pub dataset: &'static str,
    pub task: &'static str,
    pub horizon: usize,
    pub model: &'static str,
    pub mse: f64,
    pub mae: f64,
}

macro_rules! b {
    ($ds:literal, $task:literal, $h:literal, $m:literal, $mse:literal, $mae:literal) => {
        Baseline {
            dataset: $ds,
            task: $task,
            horizon: $h,
            model: $m,
            mse: $mse,
            mae: $mae,
        }
    };
}

// published metric values, not mathematical constants
#[allow(clippy::approx_constant)]
pub static BASELINES: &[Baseline] = &[
    // univariate
    b!("ecl", "univariate", 48, "informer", 0.239, 0.359),
    b!("ecl", "univariate", 48, "lstma", 0.493, 0.539),
    b!("ecl", "univariate", 48, "arima", 0.879, 0.764),
    b!("ecl", "univariate", 168, "informer", 0.447, 0.503),
    b!("ecl", "univariate", 168, "lstma", 0.723, 0.655),
    b!("ecl", "univariate", 168, "arima", 1.032, 0.833),
    b!("ecl", "univariate", 336, "informer", 0.489, 0.528),
    b!("ecl", "univariate", 336, "lstma", 1.212, 0.898),
    b!("ecl", "univariate", 336, "arima", 1.136, 0.876),
    b!("ecl", "univariate", 720, "informer", 0.540, 0.571),
    b!("ecl", "univariate", 720, "lstma", 1.511, 0.966),
    b!("ecl", "univariate", 720, "arima", 1.251, 0.933),
    b!("ecl", "univariate", 960, "informer", 0.582, 0.608),
    b!("ecl", "univariate", 960, "lstma", 1.545, 1.006),
    b!("ecl", "univariate", 960, "arima", 1.370, 0.982),
    b!("etth1", "univariate", 24, "informer", 0.098, 0.247),
    b!("etth1", "univariate", 24, "lstma", 0.114, 0.272),
    b!("etth1", "univariate", 24, "arima", 0.108, 0.284),
    b!("etth1", "univariate", 48, "informer", 0.158, 0.319),
    b!("etth1", "univariate", 48, "lstma", 0.193, 0.358),
    b!("etth1", "univariate", 48, "arima", 0.175, 0.424),
    b!("etth1", "univariate", 168, "informer", 0.183, 0.346),
    b!("etth1", "univariate", 168, "lstma", 0.236, 0.392),
    b!("etth1", "univariate", 168, "arima", 0.396, 0.504),
    b!("etth1", "univariate", 336, "informer", 0.222, 0.387),
    b!("etth1", "univariate", 336, "lstma", 0.590, 0.698),
    b!("etth1", "univariate", 336, "arima", 0.468, 0.593),
    b!("etth1", "univariate", 720, "informer", 0.269, 0.435),
    b!("etth1", "univariate", 720, "lstma", 0.683, 0.768),
    b!("etth1", "univariate", 720, "arima", 0.659, 0.766),
    b!("etth2", "univariate", 24, "informer", 0.093, 0.240),
    b!("etth2", "univariate", 24, "lstma", 0.155, 0.307),
    b!("etth2", "univariate", 24, "arima", 3.554, 0.445),
    b!("etth2", "univariate", 48, "informer", 0.155, 0.314),
    b!("etth2", "univariate", 48, "lstma", 0.190, 0.348),
    b!("etth2", "univariate", 48, "arima", 3.190, 0.474),
    b!("etth2", "univariate", 168, "informer", 0.232, 0.389),
    b!("etth2", "univariate", 168, "lstma", 0.385, 0.514),
    b!("etth2", "univariate", 168, "arima", 2.800, 0.595),
    b!("etth2", "univariate", 336, "informer", 0.263, 0.417),
    b!("etth2", "univariate", 336, "lstma", 0.558, 0.606),
    b!("etth2", "univariate", 336, "arima", 2.753, 0.738),
    b!("etth2", "univariate", 720, "informer", 0.277, 0.431),
    b!("etth2", "univariate", 720, "lstma", 0.640, 0.681),
    b!("etth2", "univariate", 720, "arima", 2.878, 1.044),
    b!("ettm1", "univariate", 24, "informer", 0.030, 0.137),
    b!("ettm1", "univariate", 24, "lstma", 0.121, 0.233),
    b!("ettm1", "univariate", 24, "arima", 0.090, 0.206),
    b!("ettm1", "univariate", 48, "informer", 0.069, 0.203),
    b!("ettm1", "univariate", 48, "lstma", 0.305, 0.411),
    b!("ettm1", "univariate", 48, "arima", 0.179, 0.306),
    b!("ettm1", "univariate", 96, "informer", 0.194, 0.372),
    b!("ettm1", "univariate", 96, "lstma", 0.287, 0.420),
    b!("ettm1", "univariate", 96, "arima", 0.272, 0.399),
    b!("ettm1", "univariate", 288, "informer", 0.401, 0.554),
    b!("ettm1", "univariate", 288, "lstma", 0.524, 0.584),
    b!("ettm1", "univariate", 288, "arima", 0.462, 0.558),
    b!("ettm1", "univariate", 672, "informer", 0.512, 0.644),
    b!("ettm1", "univariate", 672, "lstma", 1.064, 0.873),
    b!("ettm1", "univariate", 672, "arima", 0.639, 0.697),
    b!("weather", "univariate", 24, "informer", 0.117, 0.251),
    b!("weather", "univariate", 24, "lstma", 0.131, 0.254),
    b!("weather", "univariate", 24, "arima", 0.219, 0.355),
    b!("weather", "univariate", 48, "informer", 0.178, 0.318),
    b!("weather", "univariate", 48, "lstma", 0.190, 0.334),
    b!("weather", "univariate", 48, "arima", 0.273, 0.409),
    b!("weather", "univariate", 168, "informer", 0.266, 0.398),
    b!("weather", "univariate", 168, "lstma", 0.341, 0.448),
    b!("weather", "univariate", 168, "arima", 0.503, 0.599),
    b!("weather", "univariate", 336, "informer", 0.297, 0.416),
    b!("weather", "univariate", 336, "lstma", 0.456, 0.554),
    b!("weather", "univariate", 336, "arima", 0.728, 0.730),
    // multivariate
    b!("ettm2", "multivariate", 96, "fedformer-f", 0.203, 0.287),
    b!("ettm2", "multivariate", 96, "fedformer-w", 0.204, 0.288),
    b!("ettm2", "multivariate", 192, "fedformer-f", 0.269, 0.328),
    b!("ettm2", "multivariate", 192, "fedformer-w", 0.316, 0.363),
    b!("ettm2", "multivariate", 336, "fedformer-f", 0.325, 0.366),
    b!("ettm2", "multivariate", 336, "fedformer-w", 0.359, 0.387),
    b!("ettm2", "multivariate", 720, "fedformer-f", 0.421, 0.415),
    b!("ettm2", "multivariate", 720, "fedformer-w", 0.433, 0.432),
    b!("exchange", "multivariate", 96, "fedformer-f", 0.148, 0.278),
    b!("exchange", "multivariate", 96, "fedformer-w", 0.139, 0.276),
    b!("exchange", "multivariate", 192, "fedformer-f", 0.271, 0.380),
    b!("exchange", "multivariate", 192, "fedformer-w", 0.256, 0.369),
    b!("exchange", "multivariate", 336, "fedformer-f", 0.460, 0.500),
    b!("exchange", "multivariate", 336, "fedformer-w", 0.426, 0.464),
    b!("exchange", "multivariate", 720, "fedformer-f", 1.195, 0.841),
    b!("exchange", "multivariate", 720, "fedformer-w", 1.090, 0.800),
    b!("ili", "multivariate", 24, "fedformer-f", 3.338, 1.260),
    b!("ili", "multivariate", 24, "fedformer-w", 2.203, 0.963),
    b!("ili", "multivariate", 36, "fedformer-f", 2.678, 1.080),
    b!("ili", "multivariate", 36, "fedformer-w", 2.272, 0.976),
    b!("ili", "multivariate", 48, "fedformer-f", 2.622, 1.078),
    b!("ili", "multivariate", 48, "fedformer-w", 2.209, 0.981),
    b!("ili", "multivariate", 60, "fedformer-f", 2.857, 1.157),
    b!("ili", "multivariate", 60, "fedformer-w", 2.545, 1.061),
    b!("weather", "multivariate", 96, "fedformer-f", 0.217, 0.296),
    b!("weather", "multivariate", 96, "fedformer-w", 0.227, 0.304),
    b!("weather", "multivariate", 192, "fedformer-f", 0.276, 0.336),
    b!("weather", "multivariate", 192, "fedformer-w", 0.295, 0.363),
    b!("weather", "multivariate", 336, "fedformer-f", 0.339, 0.380),
    b!("weather", "multivariate", 336, "fedformer-w", 0.381, 0.416),
    b!("weather", "multivariate", 720, "fedformer-f", 0.403, 0.428),
    b!("weather", "multivariate", 720, "fedformer-w", 0.424, 0.434),
];

pub fn baselines_for(dataset: &str, task: &str, horizon: usize) -> Vec<&'static Baseline> {
    BASELINES
        .iter()
        .filter(|b| b.dataset == dataset && b.task == task && b.horizon == horizon)
        .collect()
}
