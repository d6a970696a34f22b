//! Command implementations: prepare, motifs, train, evaluate, gridsearch,
//! benchmark.

use std::path::{Path, PathBuf};

use rmm_core::eval::{
    evaluate, fit_and_evaluate, grid_search, motif_relevance, EvalReport, HyperGrid, ModelVariant,
    SearchConfig,
};
use rmm_core::motif::{extract_motifs, zero_crossings, MotifBasis};
use rmm_core::scr::ReservoirSpec;
use rmm_core::series::Split;

use crate::cache::{cache_valid, read_cache, write_cache};
use crate::config::{RunConfig, Task, Variant};
use crate::dataset::{prepare_data, preset, resolve_file, split_windows, PreparedData};
use crate::error::CliError;
use crate::export::{comparison_table, write_matrix_csv, write_reports_csv, write_vector_csv};
use crate::manifest::{sha256_file, write_manifest};
use crate::persist::{load_model, save_model};
use crate::svg::line_plot;

/// The benchmark suite: (dataset, task, horizons).
pub static BENCHMARK_SUITE: &[(&str, Task, &[usize])] = &[
    ("ecl", Task::Univariate, &[48, 168, 336, 720, 960]),
    ("etth1", Task::Univariate, &[24, 48, 168, 336, 720]),
    ("etth2", Task::Univariate, &[24, 48, 168, 336, 720]),
    ("ettm1", Task::Univariate, &[24, 48, 96, 288, 672]),
    ("weather", Task::Univariate, &[24, 48, 168, 336]),
    ("ettm2", Task::Multivariate, &[96, 192, 336, 720]),
    ("exchange", Task::Multivariate, &[96, 192, 336, 720]),
    ("weather", Task::Multivariate, &[96, 192, 336, 720]),
    ("ili", Task::Multivariate, &[24, 36, 48, 60]),
];

fn variant_of(v: Variant) -> ModelVariant {
    match v {
        Variant::Rmm => ModelVariant::MotifReadout,
        Variant::Lrc => ModelVariant::ReservoirReadout,
    }
}

fn search_config(cfg: &RunConfig, horizon: usize) -> Result<SearchConfig, CliError> {
    Ok(SearchConfig {
        dataset: cfg.dataset.clone(),
        task: cfg.task.label().to_string(),
        variant: variant_of(cfg.variant),
        horizon,
        lookback: cfg.effective_lookback()?,
        reservoir_size: cfg.effective_reservoir_size()?,
        ridge_lambda: cfg.ridge_lambda,
        rank_tol: cfg.rank_tol,
        refit_with_val: cfg.refit_with_val,
    })
}

fn ensure_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path).map_err(|e| CliError::io("creating output dir", e))
}

fn write_run_config(dir: &Path, cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let path = dir.join("run_config.txt");
    std::fs::write(&path, cfg.to_text()).map_err(|e| CliError::io("writing run config", e))?;
    Ok(path)
}

/// Loads the dataset through the cache when a valid entry exists,
/// otherwise ingests the raw file directly (without writing a cache).
fn load_or_ingest(cfg: &RunConfig) -> Result<PreparedData, CliError> {
    let p = preset(&cfg.dataset)?;
    if let Ok(path) = resolve_file(p, &cfg.data_dir) {
        if let Ok(sha) = sha256_file(&path) {
            if cache_valid(
                &cfg.cache_dir,
                &cfg.dataset,
                cfg.task,
                cfg.fill_policy,
                &sha,
            ) {
                return read_cache(&cfg.cache_dir, &cfg.dataset, cfg.task);
            }
        }
    }
    prepare_data(cfg)
}

fn model_file_name(dataset: &str, task: Task, variant: Variant, horizon: usize) -> String {
    format!(
        "{dataset}_{}_{}_h{horizon}.rmmf",
        task.label(),
        variant.label()
    )
}

fn require_horizons(cfg: &RunConfig) -> Result<&[usize], CliError> {
    if cfg.horizons.is_empty() {
        return Err(CliError::Config(
            "no horizons given (use --horizon H or set `horizons` in the config)".into(),
        ));
    }
    Ok(&cfg.horizons)
}

pub fn cmd_prepare(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let p = preset(&cfg.dataset)?;
    let path = resolve_file(p, &cfg.data_dir)?;
    let sha = sha256_file(&path).map_err(|e| CliError::io("hashing dataset", e))?;
    if cache_valid(
        &cfg.cache_dir,
        &cfg.dataset,
        cfg.task,
        cfg.fill_policy,
        &sha,
    ) {
        println!(
            "cache hit: {}/{} already prepared, no recompute",
            cfg.dataset,
            cfg.task.label()
        );
        return Ok(());
    }
    let data = prepare_data(cfg)?;
    if let Some(report) = &data.report {
        println!("{}", report.render());
    }
    println!(
        "split: train [0, {}), val [{}, {}), test [{}, {})",
        data.bounds.train_end,
        data.bounds.train_end,
        data.bounds.val_end,
        data.bounds.val_end,
        data.bounds.test_end
    );
    let (bin, side) = write_cache(&cfg.cache_dir, &data)?;
    println!("cache written: {}", bin.display());
    let config_path = write_run_config(&cfg.cache_dir, cfg)?;
    write_manifest(
        &cfg.cache_dir,
        "prepare",
        &cfg.to_text(),
        &[(path, sha)],
        &[bin, side, config_path],
    )?;
    Ok(())
}

pub fn cmd_motifs(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let out_dir = cfg.out_dir.join("motifs");
    ensure_dir(&out_dir)?;

    // With a fitted model the export uses the model's own basis and orders
    // motifs by readout relevance; otherwise by eigenvalue.
    let (basis, order, labels): (MotifBasis, Vec<usize>, Vec<String>) = match &cfg.model_path {
        Some(path) => {
            let model = load_model(path)?;
            let profile = motif_relevance(&model)?;
            let basis = model
                .extractor
                .motif_basis()
                .ok_or_else(|| CliError::Config("model has no motif basis".into()))?
                .clone();
            let labels = profile
                .order
                .iter()
                .map(|&i| format!("motif {} (relevance {:.4})", i + 1, profile.scores[i]))
                .collect();
            let scores_path = out_dir.join("relevance.csv");
            write_vector_csv(&scores_path, "relevance", &profile.scores)?;
            (basis, profile.order, labels)
        }
        None => {
            let spec = ReservoirSpec::new(
                cfg.effective_reservoir_size()?,
                cfg.cycle_weight,
                cfg.input_weight,
            )?;
            let basis = extract_motifs(&spec, cfg.effective_lookback()?, cfg.rank_tol)?;
            let order: Vec<usize> = (0..basis.count()).collect();
            let labels = order
                .iter()
                .map(|&i| {
                    format!(
                        "motif {} (eigenvalue {:.4e})",
                        i + 1,
                        basis.eigenvalues()[i]
                    )
                })
                .collect();
            (basis, order, labels)
        }
    };

    let headers: Vec<String> = (1..=basis.count()).map(|i| format!("motif_{i}")).collect();
    let motifs_path = out_dir.join("motifs.csv");
    write_matrix_csv(&motifs_path, basis.motifs(), Some(&headers))?;
    let eig_path = out_dir.join("eigenvalues.csv");
    write_vector_csv(&eig_path, "eigenvalue", basis.eigenvalues())?;

    // kernel objects for cross-checking, plus the reservoir record
    let spec = basis.spec().clone();
    let op = rmm_core::scr::state_operator(&spec, basis.lookback())?;
    let operator_path = out_dir.join("state_operator.csv");
    write_matrix_csv(&operator_path, op.matrix(), None)?;
    let q = rmm_core::scr::metric_tensor(&op);
    let metric_path = out_dir.join("metric_tensor.csv");
    write_matrix_csv(&metric_path, q.matrix(), None)?;
    let reservoir_path = out_dir.join("reservoir.txt");
    std::fs::write(
        &reservoir_path,
        format!(
            "size = {}\ncycle_weight = {}\ninput_weight = {}\n",
            spec.size(),
            spec.cycle_weight(),
            spec.input_weight()
        ),
    )
    .map_err(|e| CliError::io("writing reservoir record", e))?;

    let k = cfg.top_k.min(basis.count());
    let traces: Vec<(String, Vec<f64>)> = order[..k]
        .iter()
        .zip(labels.iter())
        .map(|(&i, label)| (label.clone(), basis.motif(i)))
        .collect();
    let crossings: Vec<usize> = order[..k]
        .iter()
        .map(|&i| zero_crossings(&basis.motif(i)))
        .collect();
    println!("top-{k} motifs (zero crossings: {:?})", crossings);
    let svg_path = out_dir.join(format!("motifs_top{k}.svg"));
    std::fs::write(&svg_path, line_plot("top motifs", &traces))
        .map_err(|e| CliError::io("writing svg", e))?;
    println!("wrote {}", svg_path.display());

    let config_path = write_run_config(&out_dir, cfg)?;
    let mut outputs = vec![
        motifs_path,
        eig_path,
        operator_path,
        metric_path,
        reservoir_path,
        svg_path,
        config_path,
    ];
    let mut inputs = Vec::new();
    if let Some(path) = &cfg.model_path {
        let sha = sha256_file(path).map_err(|e| CliError::io("hashing model", e))?;
        inputs.push((path.clone(), sha));
        outputs.push(out_dir.join("relevance.csv"));
    }
    write_manifest(&out_dir, "motifs", &cfg.to_text(), &inputs, &outputs)?;
    Ok(())
}

pub fn cmd_train(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let horizons = require_horizons(cfg)?.to_vec();
    let data = load_or_ingest(cfg)?;
    ensure_dir(&cfg.out_dir)?;
    let models_dir = cfg.out_dir.join("models");
    ensure_dir(&models_dir)?;

    let mut reports = Vec::new();
    let mut outputs = Vec::new();
    for &h in &horizons {
        let scfg = search_config(cfg, h)?;
        let windows = split_windows(&data, scfg.lookback, h, cfg.refit_with_val)?;
        let fit_on = if cfg.refit_with_val {
            windows.train_val.as_ref().unwrap_or(&windows.train)
        } else {
            &windows.train
        };
        let eval_on = if windows.val.is_empty() {
            fit_on
        } else {
            &windows.val
        };
        let (model, report) = fit_and_evaluate(
            &scfg,
            cfg.cycle_weight,
            cfg.input_weight,
            fit_on,
            eval_on,
            Some(&data.stats),
        )?;
        println!(
            "{} {} h={h}: {} mse {:.6} mae {:.6} ({:.1}s)",
            cfg.dataset,
            cfg.task.label(),
            report.split.label(),
            report.mse,
            report.mae,
            report.wall_seconds
        );
        let model_path = models_dir.join(model_file_name(&cfg.dataset, cfg.task, cfg.variant, h));
        save_model(&model_path, &model)?;
        outputs.push(model_path);
        reports.push(report);
    }
    let reports_path = cfg.out_dir.join(format!(
        "train_{}_{}_{}.csv",
        cfg.dataset,
        cfg.task.label(),
        cfg.variant.label()
    ));
    write_reports_csv(&reports_path, &reports)?;
    outputs.push(reports_path);
    let config_path = write_run_config(&cfg.out_dir, cfg)?;
    outputs.push(config_path);
    let input_sha = (data.source_path.clone(), data.source_sha256.clone());
    write_manifest(
        &cfg.out_dir,
        "train",
        &cfg.to_text(),
        &[input_sha],
        &outputs,
    )?;
    Ok(())
}

pub fn cmd_evaluate(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let model_path = cfg
        .model_path
        .as_ref()
        .ok_or_else(|| CliError::Config("evaluate requires --model".into()))?;
    let model = load_model(model_path)?;

    let mut data_cfg = cfg.clone();
    data_cfg.dataset = model.meta.dataset.clone();
    data_cfg.task = Task::parse(&model.meta.task)?;
    let data = load_or_ingest(&data_cfg)?;

    let split = match cfg.split.as_str() {
        "train" => Split::Train,
        "val" => Split::Val,
        "test" => Split::Test,
        other => {
            return Err(CliError::Config(format!(
                "unknown split '{other}' (expected train|val|test)"
            )))
        }
    };
    let windows = split_windows(&data, model.meta.lookback, model.horizon, false)?;
    let ds = match split {
        Split::Train => &windows.train,
        Split::Val => &windows.val,
        _ => &windows.test,
    };
    let (mse, mae) = evaluate(&model, ds)?;
    println!(
        "{} {} h={} {}: mse {:.6} mae {:.6} over {} windows",
        model.meta.dataset,
        model.meta.task,
        model.horizon,
        split.label(),
        mse,
        mae,
        ds.len()
    );

    ensure_dir(&cfg.out_dir)?;
    let report = EvalReport {
        dataset: model.meta.dataset.clone(),
        task: model.meta.task.clone(),
        variant: model.extractor.variant_label().to_string(),
        horizon: model.horizon,
        lookback: model.meta.lookback,
        reservoir_size: model.meta.reservoir_size,
        cycle_weight: model.meta.cycle_weight,
        input_weight: model.meta.input_weight,
        ridge_lambda: model.meta.ridge_lambda,
        split,
        mse,
        mae,
        wall_seconds: 0.0,
    };
    let reports_path = cfg.out_dir.join(format!(
        "evaluate_{}_{}_h{}.csv",
        report.dataset, report.task, report.horizon
    ));
    write_reports_csv(&reports_path, &[report])?;
    let config_path = write_run_config(&cfg.out_dir, cfg)?;
    let model_sha = sha256_file(model_path).map_err(|e| CliError::io("hashing model", e))?;
    write_manifest(
        &cfg.out_dir,
        "evaluate",
        &cfg.to_text(),
        &[
            (model_path.clone(), model_sha),
            (data.source_path.clone(), data.source_sha256.clone()),
        ],
        &[reports_path, config_path],
    )?;
    Ok(())
}

/// Output bundle of one grid search, reused by the benchmark command.
struct GridRun {
    validation_reports: Vec<EvalReport>,
    test_report: EvalReport,
    model_path: PathBuf,
    wall_seconds: f64,
}

fn run_grid(
    cfg: &RunConfig,
    data: &PreparedData,
    horizon: usize,
    models_dir: &Path,
) -> Result<GridRun, CliError> {
    let start = std::time::Instant::now();
    let scfg = search_config(cfg, horizon)?;
    let grid = HyperGrid {
        cycle_weights: cfg.cycle_weight_grid.clone(),
        input_weights: cfg.input_weight_grid.clone(),
    };
    let windows = split_windows(data, scfg.lookback, horizon, cfg.refit_with_val)?;
    let outcome = grid_search(&scfg, &grid, &windows, Some(&data.stats))?;
    let model_path = models_dir.join(model_file_name(
        &cfg.dataset,
        cfg.task,
        cfg.variant,
        horizon,
    ));
    save_model(&model_path, &outcome.model)?;
    println!(
        "{} {} h={horizon}: best (cycle_weight={}, input_weight={}), test mse {:.6} mae {:.6} [{:.1}s]",
        cfg.dataset,
        cfg.task.label(),
        outcome.best_cycle_weight,
        outcome.best_input_weight,
        outcome.test_report.mse,
        outcome.test_report.mae,
        start.elapsed().as_secs_f64()
    );
    Ok(GridRun {
        validation_reports: outcome.validation_reports,
        test_report: outcome.test_report,
        model_path,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn cmd_gridsearch(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let horizons = require_horizons(cfg)?.to_vec();
    let data = load_or_ingest(cfg)?;
    ensure_dir(&cfg.out_dir)?;
    let models_dir = cfg.out_dir.join("models");
    ensure_dir(&models_dir)?;

    let mut outputs = Vec::new();
    let mut test_reports = Vec::new();
    let mut timing_lines = Vec::new();
    for &h in &horizons {
        let run = run_grid(cfg, &data, h, &models_dir)?;
        let val_path = cfg.out_dir.join(format!(
            "gridsearch_{}_{}_{}_h{h}_validation.csv",
            cfg.dataset,
            cfg.task.label(),
            cfg.variant.label()
        ));
        write_reports_csv(&val_path, &run.validation_reports)?;
        outputs.push(val_path);
        outputs.push(run.model_path.clone());
        timing_lines.push(format!(
            "{} {} h={h}: {:.2}s",
            cfg.dataset,
            cfg.task.label(),
            run.wall_seconds
        ));
        test_reports.push(run.test_report);
    }
    let results_path = cfg.out_dir.join(format!(
        "results_{}_{}_{}.csv",
        cfg.dataset,
        cfg.task.label(),
        cfg.variant.label()
    ));
    write_reports_csv(&results_path, &test_reports)?;
    outputs.push(results_path);

    // wall-clock timings are informational and live outside the
    // deterministic artifacts
    let timings_path = cfg.out_dir.join("timings.txt");
    std::fs::write(&timings_path, timing_lines.join("\n") + "\n")
        .map_err(|e| CliError::io("writing timings", e))?;

    let config_path = write_run_config(&cfg.out_dir, cfg)?;
    outputs.push(config_path);
    write_manifest(
        &cfg.out_dir,
        "gridsearch",
        &cfg.to_text(),
        &[(data.source_path.clone(), data.source_sha256.clone())],
        &outputs,
    )?;
    Ok(())
}

pub fn cmd_benchmark(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate()?;
    ensure_dir(&cfg.out_dir)?;
    let models_dir = cfg.out_dir.join("models");
    ensure_dir(&models_dir)?;

    let dataset_filter = cfg.explicit("dataset").then(|| cfg.dataset.clone());
    let task_filter = cfg.explicit("task").then_some(cfg.task);
    let horizon_filter = cfg.explicit("horizons").then(|| cfg.horizons.clone());

    let mut all_validation = Vec::new();
    let mut all_tests = Vec::new();
    let mut outputs = Vec::new();
    let mut inputs: Vec<(PathBuf, String)> = Vec::new();
    let mut timing_lines = Vec::new();

    for &(dataset, task, horizons) in BENCHMARK_SUITE {
        if dataset_filter.as_deref().is_some_and(|d| d != dataset) {
            continue;
        }
        if task_filter.is_some_and(|t| t != task) {
            continue;
        }
        let horizons: Vec<usize> = horizons
            .iter()
            .copied()
            .filter(|h| horizon_filter.as_ref().is_none_or(|f| f.contains(h)))
            .collect();
        if horizons.is_empty() {
            continue;
        }
        let mut run_cfg = cfg.clone();
        run_cfg.dataset = dataset.to_string();
        run_cfg.task = task;
        // benchmark runs use preset geometry unless explicitly overridden
        if !cfg.explicit("lookback") {
            run_cfg.lookback = None;
        }
        if !cfg.explicit("reservoir_size") {
            run_cfg.reservoir_size = None;
        }
        let data = load_or_ingest(&run_cfg)?;
        if !inputs.iter().any(|(p, _)| p == &data.source_path) {
            inputs.push((data.source_path.clone(), data.source_sha256.clone()));
        }
        for &h in &horizons {
            let run = run_grid(&run_cfg, &data, h, &models_dir)?;
            timing_lines.push(format!(
                "{dataset} {} h={h}: {:.2}s",
                task.label(),
                run.wall_seconds
            ));
            all_validation.extend(run.validation_reports);
            all_tests.push(run.test_report);
            outputs.push(run.model_path);
        }
    }

    if all_tests.is_empty() {
        return Err(CliError::Config(
            "benchmark selection matched nothing in the suite".into(),
        ));
    }

    let results_path = cfg.out_dir.join("benchmark_results.csv");
    write_reports_csv(&results_path, &all_tests)?;
    outputs.push(results_path);
    let validation_path = cfg.out_dir.join("benchmark_validation.csv");
    write_reports_csv(&validation_path, &all_validation)?;
    outputs.push(validation_path);

    for (task, file) in [
        (Task::Univariate, "benchmark_table_univariate.txt"),
        (Task::Multivariate, "benchmark_table_multivariate.txt"),
    ] {
        let rows: Vec<EvalReport> = all_tests
            .iter()
            .filter(|r| r.task == task.label())
            .cloned()
            .collect();
        if rows.is_empty() {
            continue;
        }
        let table = comparison_table(task.label(), &rows);
        println!("\n{} results:\n{table}", task.label());
        let path = cfg.out_dir.join(file);
        std::fs::write(&path, table).map_err(|e| CliError::io("writing table", e))?;
        outputs.push(path);
    }

    let timings_path = cfg.out_dir.join("timings.txt");
    std::fs::write(&timings_path, timing_lines.join("\n") + "\n")
        .map_err(|e| CliError::io("writing timings", e))?;
    let config_path = write_run_config(&cfg.out_dir, cfg)?;
    outputs.push(config_path);
    write_manifest(&cfg.out_dir, "benchmark", &cfg.to_text(), &inputs, &outputs)?;
    Ok(())
}
