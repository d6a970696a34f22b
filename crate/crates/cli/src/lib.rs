//! Command-line toolkit around `rmm-core`: dataset preparation, motif
//! export, training, evaluation, grid search and benchmark reproduction.

pub mod baselines;
pub mod cache;
pub mod commands;
pub mod config;
pub mod dataset;
pub mod error;
pub mod export;
pub mod manifest;
pub mod persist;
pub mod svg;

use config::RunConfig;
use error::CliError;

pub const USAGE: &str = "\
rmm - reservoir motif forecasting toolkit

USAGE:
  rmm <command> [flags]

COMMANDS:
  prepare     Ingest a dataset, normalize it and write the binary cache
  motifs      Export the motif basis (CSV + SVG); with --model, relevance-ordered
  train       Fit a single configuration and save the model
  evaluate    Score a saved model on a split
  gridsearch  Validation grid search over (cycle weight, input weight)
  benchmark   Run the full benchmark suite and compare to published baselines

FLAGS (every flag overrides the matching config key):
  --config PATH          Config file with `key = value` lines
  --data-dir DIR         Raw dataset directory (env RMM_DATA_DIR, default: data)
  --cache-dir DIR        Prepared dataset cache (default: cache)
  --out-dir DIR          Output directory (default: out)
  --dataset ID           etth1|etth2|ettm1|ettm2|ecl|weather|exchange|ili
  --task T               univariate|multivariate
  --horizon H[,H..]      Forecast horizons
  --tau N                Lookback window length (preset default: 336; ili: 104)
  --reservoir-size N     Reservoir size (preset default: 150; ili: 50)
  --rho X                Cycle weight for single-point commands
  --r-in X               Input weight for single-point commands
  --rho-grid A,B,..      Grid of cycle weights (default 0.9,0.99,0.999,0.9999)
  --r-in-grid A,B,..     Grid of input weights (default 0.01,0.05,0.1,1)
  --ridge X              Ridge coefficient (default 1e-4)
  --rank-tol X           Motif rank tolerance (default 1e-12)
  --refit-with-val       Refit the selected model on train+validation
  --fill-policy P        reject|ffill for missing values (default reject)
  --variant V            rmm|lrc feature variant (default rmm)
  --top-k K              Motifs in plots/rankings (default 6)
  --model PATH           Saved model file (motifs, evaluate)
  --split S              train|val|test for evaluate (default test)

For `benchmark`, explicitly passed --dataset/--task/--horizon restrict the
suite; otherwise the full univariate and multivariate suites run.

EXIT CODES:
  0 success   2 usage/config error   3 data error   4 numerical error   5 io error
";

fn flag_to_key(flag: &str) -> Option<(&'static str, bool)> {
    // (config key, takes a value)
    Some(match flag {
        "--config" => ("config", true),
        "--data-dir" => ("data_dir", true),
        "--cache-dir" => ("cache_dir", true),
        "--out-dir" => ("out_dir", true),
        "--dataset" => ("dataset", true),
        "--task" => ("task", true),
        "--horizon" | "--horizons" => ("horizons", true),
        "--tau" | "--lookback" => ("lookback", true),
        "--reservoir-size" => ("reservoir_size", true),
        "--rho" | "--cycle-weight" => ("cycle_weight", true),
        "--r-in" | "--input-weight" => ("input_weight", true),
        "--rho-grid" => ("cycle_weight_grid", true),
        "--r-in-grid" => ("input_weight_grid", true),
        "--ridge" => ("ridge_lambda", true),
        "--rank-tol" => ("rank_tol", true),
        "--refit-with-val" => ("refit_with_val", false),
        "--fill-policy" => ("fill_policy", true),
        "--variant" => ("variant", true),
        "--top-k" => ("top_k", true),
        "--model" => ("model", true),
        "--split" => ("split", true),
        _ => return None,
    })
}

/// Parses flags into a resolved config. Precedence: defaults (including
/// the data-dir environment variable), then the config file, then flags
/// in command-line order.
pub fn parse_args(args: &[String]) -> Result<(String, RunConfig), CliError> {
    let command = args
        .first()
        .ok_or_else(|| CliError::Usage("missing command".into()))?
        .clone();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut config_path: Option<String> = None;
    let mut i = 1;
    while i < args.len() {
        let flag = &args[i];
        let (key, takes_value) =
            flag_to_key(flag).ok_or_else(|| CliError::Usage(format!("unknown flag '{flag}'")))?;
        let value = if takes_value {
            i += 1;
            args.get(i)
                .ok_or_else(|| CliError::Usage(format!("flag '{flag}' needs a value")))?
                .clone()
        } else {
            "true".to_string()
        };
        if key == "config" {
            config_path = Some(value);
        } else {
            pairs.push((key.to_string(), value));
        }
        i += 1;
    }

    let mut cfg = RunConfig::default();
    if let Some(path) = config_path {
        cfg.apply_file(std::path::Path::new(&path))?;
    }
    for (key, value) in &pairs {
        cfg.set(key, value)?;
    }
    Ok((command, cfg))
}

/// Runs one command line; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        print!("{USAGE}");
        return if args.is_empty() { 2 } else { 0 };
    }
    let result = parse_args(args).and_then(|(command, cfg)| match command.as_str() {
        "prepare" => commands::cmd_prepare(&cfg),
        "motifs" => commands::cmd_motifs(&cfg),
        "train" => commands::cmd_train(&cfg),
        "evaluate" => commands::cmd_evaluate(&cfg),
        "gridsearch" => commands::cmd_gridsearch(&cfg),
        "benchmark" => commands::cmd_benchmark(&cfg),
        other => Err(CliError::Usage(format!(
            "unknown command '{other}' (see `rmm help`)"
        ))),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(parts: &[&str]) -> Vec<String> {
        parts.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_command_and_flags() {
        let (cmd, cfg) = parse_args(&argv(&[
            "gridsearch",
            "--dataset",
            "ettm1",
            "--horizon",
            "24,48",
            "--ridge",
            "0.001",
            "--refit-with-val",
        ]))
        .unwrap();
        assert_eq!(cmd, "gridsearch");
        assert_eq!(cfg.dataset, "ettm1");
        assert_eq!(cfg.horizons, vec![24, 48]);
        assert_eq!(cfg.ridge_lambda, 0.001);
        assert!(cfg.refit_with_val);
        assert!(cfg.explicit("dataset"));
        assert!(!cfg.explicit("task"));
    }

    #[test]
    fn unknown_flags_and_commands_are_usage_errors() {
        let err = parse_args(&argv(&["train", "--bogus", "1"])).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!(run(&argv(&["frobnicate"])), 2);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = std::env::temp_dir().join(format!("rmm-lib-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "dataset = etth2\nridge_lambda = 0.5\n").unwrap();
        let (_, cfg) = parse_args(&argv(&[
            "train",
            "--config",
            path.to_str().unwrap(),
            "--ridge",
            "0.25",
        ]))
        .unwrap();
        assert_eq!(cfg.dataset, "etth2");
        assert_eq!(cfg.ridge_lambda, 0.25);
        std::fs::remove_dir_all(&dir).ok();
    }
}
