//! Run configuration: defaults, config-file parsing, flag overrides.
//!
//! A run is reproducible from its resolved config alone; every command
//! writes the resolved form to `run_config.txt` in its output directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::dataset::preset;
use crate::error::CliError;

pub const DATA_DIR_ENV: &str = "RMM_DATA_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Univariate,
    Multivariate,
}

impl Task {
    pub fn label(&self) -> &'static str {
        match self {
            Task::Univariate => "univariate",
            Task::Multivariate => "multivariate",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "univariate" => Ok(Task::Univariate),
            "multivariate" => Ok(Task::Multivariate),
            other => Err(CliError::Config(format!(
                "unknown task '{other}' (expected univariate|multivariate)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillPolicy {
    Reject,
    ForwardFill,
}

impl FillPolicy {
    pub fn label(&self) -> &'static str {
        match self {
            FillPolicy::Reject => "reject",
            FillPolicy::ForwardFill => "ffill",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "reject" => Ok(FillPolicy::Reject),
            "ffill" | "forward_fill" => Ok(FillPolicy::ForwardFill),
            other => Err(CliError::Config(format!(
                "unknown fill policy '{other}' (expected reject|ffill)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Rmm,
    Lrc,
}

impl Variant {
    pub fn label(&self) -> &'static str {
        match self {
            Variant::Rmm => "rmm",
            Variant::Lrc => "lrc",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "rmm" => Ok(Variant::Rmm),
            "lrc" => Ok(Variant::Lrc),
            other => Err(CliError::Config(format!(
                "unknown variant '{other}' (expected rmm|lrc)"
            ))),
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Canonical names of keys that were set explicitly (config file or
    /// flag); the benchmark command treats explicit keys as suite filters.
    explicit: std::collections::BTreeSet<String>,
    pub dataset: String,
    pub task: Task,
    pub horizons: Vec<usize>,
    /// None means "use the dataset preset default".
    pub lookback: Option<usize>,
    pub reservoir_size: Option<usize>,
    pub cycle_weight: f64,
    pub input_weight: f64,
    pub cycle_weight_grid: Vec<f64>,
    pub input_weight_grid: Vec<f64>,
    pub ridge_lambda: f64,
    pub rank_tol: f64,
    pub refit_with_val: bool,
    pub fill_policy: FillPolicy,
    pub variant: Variant,
    pub top_k: usize,
    pub data_dir: PathBuf,
    pub cache_dir: PathBuf,
    pub out_dir: PathBuf,
    pub model_path: Option<PathBuf>,
    pub split: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        let data_dir = std::env::var_os(DATA_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("data"));
        RunConfig {
            explicit: Default::default(),
            dataset: "etth1".into(),
            task: Task::Univariate,
            horizons: Vec::new(),
            lookback: None,
            reservoir_size: None,
            cycle_weight: 0.9,
            input_weight: 1.0,
            cycle_weight_grid: vec![0.9, 0.99, 0.999, 0.9999],
            input_weight_grid: vec![0.01, 0.05, 0.1, 1.0],
            ridge_lambda: 1e-4,
            rank_tol: 1e-12,
            refit_with_val: false,
            fill_policy: FillPolicy::Reject,
            variant: Variant::Rmm,
            top_k: 6,
            data_dir,
            cache_dir: PathBuf::from("cache"),
            out_dir: PathBuf::from("out"),
            model_path: None,
            split: "test".into(),
        }
    }
}

impl RunConfig {
    /// Effective lookback: explicit config wins, else the preset default.
    pub fn effective_lookback(&self) -> Result<usize, CliError> {
        match self.lookback {
            Some(t) => Ok(t),
            None => Ok(preset(&self.dataset)?.default_lookback),
        }
    }

    pub fn effective_reservoir_size(&self) -> Result<usize, CliError> {
        match self.reservoir_size {
            Some(n) => Ok(n),
            None => Ok(preset(&self.dataset)?.default_reservoir),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        preset(&self.dataset)?;
        if self.cycle_weight_grid.is_empty() || self.input_weight_grid.is_empty() {
            return Err(CliError::Config(
                "hyperparameter grids must be non-empty".into(),
            ));
        }
        if self.ridge_lambda < 0.0 || self.ridge_lambda.is_nan() {
            return Err(CliError::Config("ridge_lambda must be >= 0".into()));
        }
        if self.top_k == 0 {
            return Err(CliError::Config("top_k must be positive".into()));
        }
        Ok(())
    }

    /// True when `canonical_key` was set explicitly rather than defaulted.
    pub fn explicit(&self, canonical_key: &str) -> bool {
        self.explicit.contains(canonical_key)
    }

    /// Applies one `key = value` pair from a config file or flag.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad_num = |k: &str, v: &str| CliError::Config(format!("invalid number for {k}: '{v}'"));
        let canonical = match key {
            "horizon" => "horizons",
            "tau" => "lookback",
            "rho" => "cycle_weight",
            "r_in" => "input_weight",
            "rho_grid" => "cycle_weight_grid",
            "r_in_grid" => "input_weight_grid",
            "ridge" => "ridge_lambda",
            "model_path" => "model",
            k => k,
        };
        self.explicit.insert(canonical.to_string());
        match key {
            "dataset" => self.dataset = value.to_string(),
            "task" => self.task = Task::parse(value)?,
            "horizons" | "horizon" => {
                self.horizons = parse_usize_list(value).map_err(|_| bad_num(key, value))?;
            }
            "lookback" | "tau" => {
                self.lookback = Some(value.parse().map_err(|_| bad_num(key, value))?)
            }
            "reservoir_size" => {
                self.reservoir_size = Some(value.parse().map_err(|_| bad_num(key, value))?)
            }
            "cycle_weight" | "rho" => {
                self.cycle_weight = value.parse().map_err(|_| bad_num(key, value))?
            }
            "input_weight" | "r_in" => {
                self.input_weight = value.parse().map_err(|_| bad_num(key, value))?
            }
            "cycle_weight_grid" | "rho_grid" => {
                self.cycle_weight_grid = parse_f64_list(value).map_err(|_| bad_num(key, value))?
            }
            "input_weight_grid" | "r_in_grid" => {
                self.input_weight_grid = parse_f64_list(value).map_err(|_| bad_num(key, value))?
            }
            "ridge_lambda" | "ridge" => {
                self.ridge_lambda = value.parse().map_err(|_| bad_num(key, value))?
            }
            "rank_tol" => self.rank_tol = value.parse().map_err(|_| bad_num(key, value))?,
            "refit_with_val" => {
                self.refit_with_val = parse_bool(value)
                    .ok_or_else(|| CliError::Config(format!("invalid bool for {key}: '{value}'")))?
            }
            "fill_policy" => self.fill_policy = FillPolicy::parse(value)?,
            "variant" => self.variant = Variant::parse(value)?,
            "top_k" => self.top_k = value.parse().map_err(|_| bad_num(key, value))?,
            "data_dir" => self.data_dir = PathBuf::from(value),
            "cache_dir" => self.cache_dir = PathBuf::from(value),
            "out_dir" => self.out_dir = PathBuf::from(value),
            "model" | "model_path" => self.model_path = Some(PathBuf::from(value)),
            "split" => self.split = value.to_string(),
            other => {
                return Err(CliError::Config(format!("unknown config key '{other}'")));
            }
        }
        Ok(())
    }

    /// Loads `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "{}:{}: expected 'key = value'",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Serialized resolved configuration, stable key order.
    pub fn to_text(&self) -> String {
        let mut pairs: BTreeMap<&str, String> = BTreeMap::new();
        pairs.insert("dataset", self.dataset.clone());
        pairs.insert("task", self.task.label().into());
        pairs.insert("horizons", join_usize(&self.horizons));
        if let Some(t) = self.lookback {
            pairs.insert("lookback", t.to_string());
        }
        if let Some(n) = self.reservoir_size {
            pairs.insert("reservoir_size", n.to_string());
        }
        pairs.insert("cycle_weight", format_f64(self.cycle_weight));
        pairs.insert("input_weight", format_f64(self.input_weight));
        pairs.insert("cycle_weight_grid", join_f64(&self.cycle_weight_grid));
        pairs.insert("input_weight_grid", join_f64(&self.input_weight_grid));
        pairs.insert("ridge_lambda", format_f64(self.ridge_lambda));
        pairs.insert("rank_tol", format_f64(self.rank_tol));
        pairs.insert("refit_with_val", self.refit_with_val.to_string());
        pairs.insert("fill_policy", self.fill_policy.label().into());
        pairs.insert("variant", self.variant.label().into());
        pairs.insert("top_k", self.top_k.to_string());
        pairs.insert("data_dir", self.data_dir.display().to_string());
        pairs.insert("cache_dir", self.cache_dir.display().to_string());
        pairs.insert("out_dir", self.out_dir.display().to_string());
        if let Some(m) = &self.model_path {
            pairs.insert("model", m.display().to_string());
        }
        pairs.insert("split", self.split.clone());
        let mut out = String::from("# resolved run configuration\n");
        for (k, v) in pairs {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        }
        out
    }
}

pub fn format_f64(v: f64) -> String {
    // shortest representation that round-trips exactly
    format!("{v}")
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "1" | "yes" => Some(true),
        "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, ()> {
    s.split(',')
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| ()))
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, ()> {
    s.split(',')
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| ()))
        .collect()
}

fn join_usize(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_f64(v: &[f64]) -> String {
    v.iter()
        .map(|x| format_f64(*x))
        .collect::<Vec<_>>()
        .join(",")
}
