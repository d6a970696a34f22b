//! Acceptance suite. Each test prints one PASS/FAIL line; run with
//! `cargo test -p rmm-cli --test acceptance -- --nocapture --test-threads=1`.
//!
//! The benchmark-reproduction, relevance and determinism tests need the
//! raw dataset files (see the README for where to put them); they fail
//! with an actionable message if the files are absent.

use std::path::PathBuf;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use rmm_core::eval::{
    evaluate, grid_search, mae, motif_relevance, mse, HyperGrid, ModelVariant, SearchConfig,
    SplitWindows,
};
use rmm_core::forecast::{fit, FeatureExtractor, FeatureKind, ModelMeta};
use rmm_core::mat::{dot, norm2};
use rmm_core::motif::{extract_motifs, zero_crossings, DEFAULT_RANK_TOL};
use rmm_core::numerics::{ridge_solve, sym_eig, thin_svd};
use rmm_core::scr::{metric_tensor, reservoir_states, state_operator, ReservoirSpec};
use rmm_core::series::{make_windows, standardize, Split, SplitBounds, TimeSeries};
use rmm_core::Mat;

use rmm_cli::config::{RunConfig, Task};
use rmm_cli::dataset::{prepare_data, split_windows};
use rmm_cli::persist::load_model;

fn pass(name: &str, detail: &str) {
    println!("ACCEPTANCE {name}: PASS — {detail}");
}

fn data_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("RMM_DATA_DIR") {
        return PathBuf::from(dir);
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn data_config(dataset: &str, task: Task) -> RunConfig {
    let mut cfg = RunConfig::default();
    cfg.set("dataset", dataset).unwrap();
    cfg.set("task", task.label()).unwrap();
    cfg.set("data_dir", data_dir().to_str().unwrap()).unwrap();
    cfg
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Standard normal via Box-Muller, deterministic under the seeded rng.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

#[test]
fn kernel_identity_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let cycle_weights = [0.5, 0.9, 0.99];
    let input_weights = [0.05, 1.0];
    let mut checked = 0usize;
    for case in 0..20 {
        let n = rng.gen_range(2..=16);
        let tau = rng.gen_range(n.max(4)..=64);
        let rho = cycle_weights[case % 3];
        let r_in = input_weights[case % 2];
        let spec = ReservoirSpec::new(n, rho, r_in).unwrap();
        let op = state_operator(&spec, tau).unwrap();
        let q = metric_tensor(&op);
        let basis = extract_motifs(&spec, tau, DEFAULT_RANK_TOL).unwrap();
        let zeros = vec![0.0; n];
        for _ in 0..50 {
            let u = random_vec(&mut rng, tau);
            let v = random_vec(&mut rng, tau);
            let su = reservoir_states(&spec, &u, &zeros).unwrap();
            let sv = reservoir_states(&spec, &v, &zeros).unwrap();
            let k_states = dot(su.row(tau - 1), sv.row(tau - 1));
            let k_metric = q.kernel(&u, &v).unwrap();
            let fu = basis.reservoir_features(&u).unwrap();
            let fv = basis.reservoir_features(&v).unwrap();
            let k_motifs = dot(&fu, &fv);
            // natural kernel scale: Cauchy-Schwarz bound on |K(u,v)|
            let scale = (q.kernel(&u, &u).unwrap() * q.kernel(&v, &v).unwrap()).sqrt();
            assert!(
                (k_states - k_metric).abs() <= 1e-8 * scale,
                "states vs metric: {k_states} vs {k_metric} (case {case})"
            );
            assert!(
                (k_states - k_motifs).abs() <= 1e-8 * scale,
                "states vs motifs: {k_states} vs {k_motifs} (case {case})"
            );
            assert!(
                (k_metric - k_motifs).abs() <= 1e-8 * scale,
                "metric vs motifs: {k_metric} vs {k_motifs} (case {case})"
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "kernel identity suite took {elapsed:.1}s");
    pass(
        "kernel-identity",
        &format!("{checked} triples agree to 1e-8 in {elapsed:.2}s"),
    );
}

#[test]
fn geometry_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    // benchmark-scale instance plus a small one
    for &(n, tau, rho, r_in) in &[(150usize, 336usize, 0.99, 1.0), (12, 40, 0.9, 0.05)] {
        let spec = ReservoirSpec::new(n, rho, r_in).unwrap();
        let op = state_operator(&spec, tau).unwrap();
        let q = metric_tensor(&op);

        // independent route: explicit transpose-multiply
        let explicit = op.matrix().transpose().matmul(op.matrix());
        let qmax = q.matrix().max_abs();
        assert!(
            q.matrix().max_abs_diff(&explicit) <= 1e-10 * qmax.max(1.0),
            "Q != AᵀA at n={n}"
        );

        // motif eigenvalues vs squared singular values of A
        let basis = extract_motifs(&spec, tau, DEFAULT_RANK_TOL).unwrap();
        let svd = thin_svd(op.matrix()).unwrap();
        for (i, &lam) in basis.eigenvalues().iter().enumerate() {
            let s2 = svd.singular_values[i] * svd.singular_values[i];
            assert!(
                (lam - s2).abs() <= 1e-8 * basis.eigenvalues()[0],
                "eigenvalue {i} vs sigma^2 at n={n}"
            );
        }

        // ellipsoid identity on 100 random unit vectors
        for _ in 0..100 {
            let mut u = random_vec(&mut rng, tau);
            let nu = norm2(&u);
            u.iter_mut().for_each(|x| *x /= nu);
            let au = op.apply(&u).unwrap();
            let lhs = dot(&au, &au);
            let rhs = q.kernel(&u, &u).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-10 * lhs.max(1.0),
                "||Au||^2 != uᵀQu at n={n}"
            );
        }
    }
    pass(
        "geometry",
        "Q = AᵀA (1e-10), eigenvalues = sigma^2 (1e-8), ellipsoid identity on 100 unit vectors (1e-10)",
    );
}

#[test]
fn motif_basis_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut cases = vec![(150usize, 336usize, 0.99, 1.0)];
    for _ in 0..6 {
        let n = rng.gen_range(2..=32);
        let tau = rng.gen_range(2..=96);
        let rho = [0.5, 0.9, 0.999][rng.gen_range(0..3)];
        let r_in = [0.01, 0.1, 1.0][rng.gen_range(0..3)];
        cases.push((n, tau, rho, r_in));
    }
    for (n, tau, rho, r_in) in cases {
        let spec = ReservoirSpec::new(n, rho, r_in).unwrap();
        let basis = extract_motifs(&spec, tau, DEFAULT_RANK_TOL).unwrap();
        assert!(
            basis.count() <= n.min(tau),
            "N_m > min(N, tau) at ({n}, {tau})"
        );
        if basis.count() == 0 {
            continue;
        }
        let gram = basis.motifs().gram();
        assert!(
            gram.max_abs_diff(&Mat::identity(basis.count())) <= 1e-8,
            "MᵀM != I at ({n}, {tau})"
        );
        let q = metric_tensor(&state_operator(&spec, tau).unwrap());
        let top = basis.eigenvalues()[0];
        for i in 0..basis.count() {
            let m = basis.motif(i);
            let qm = q.matrix().mul_vec(&m);
            let mut resid = 0.0;
            for k in 0..tau {
                let d = qm[k] - basis.eigenvalues()[i] * m[k];
                resid += d * d;
            }
            assert!(
                resid.sqrt() <= 1e-8 * top,
                "eigen residual {i} at ({n}, {tau})"
            );
        }
    }
    pass(
        "motif-basis",
        "orthonormality 1e-8, eigen residuals 1e-8*lambda_1, N_m <= min(N, tau)",
    );
}

#[test]
fn readout_oracle() {
    // brute-force oracle: explicit Gauss-Jordan inversion of the
    // regularized normal equations
    fn invert(a: &Mat) -> Mat {
        let n = a.rows();
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, a.get(i, j));
            }
            aug.set(i, n + i, 1.0);
        }
        for col in 0..n {
            let mut pivot = col;
            for r in (col + 1)..n {
                if aug.get(r, col).abs() > aug.get(pivot, col).abs() {
                    pivot = r;
                }
            }
            for j in 0..2 * n {
                let tmp = aug.get(col, j);
                aug.set(col, j, aug.get(pivot, j));
                aug.set(pivot, j, tmp);
            }
            let d = aug.get(col, col);
            for j in 0..2 * n {
                let v = aug.get(col, j) / d;
                aug.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = aug.get(r, col);
                for j in 0..2 * n {
                    let v = aug.get(r, j) - f * aug.get(col, j);
                    aug.set(r, j, v);
                }
            }
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        inv
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    for trial in 0..100 {
        let n = rng.gen_range(12..50);
        let p = rng.gen_range(1..=10);
        let q = rng.gen_range(1..=4);
        let lambda = [1e-4, 0.01, 0.5, 0.0][trial % 4];
        let mut x = Mat::zeros(n, p);
        let mut y = Mat::zeros(n, q);
        for i in 0..n {
            for j in 0..p {
                x.set(i, j, rng.gen_range(-1.0..1.0));
            }
            for j in 0..q {
                y.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let sol = ridge_solve(&x, &y, lambda).unwrap();
        let mut g = x.gram();
        for i in 0..p {
            let v = g.get(i, i) + lambda;
            g.set(i, i, v);
        }
        let oracle = invert(&g).matmul(&x.transpose().matmul(&y));
        let scale = oracle.max_abs().max(1.0);
        assert!(
            sol.coefficients.max_abs_diff(&oracle) <= 1e-8 * scale,
            "trial {trial}"
        );
    }

    // minimal-norm path vs an eigendecomposition pseudo-inverse oracle
    let mut checked_min_norm = 0usize;
    for _ in 0..25 {
        let n = 18;
        let p = 7;
        let mut x = Mat::zeros(n, p);
        for i in 0..n {
            for j in 0..(p - 2) {
                x.set(i, j, rng.gen_range(-1.0..1.0));
            }
            x.set(i, p - 2, 0.5 * x.get(i, 0) - x.get(i, 1));
            x.set(i, p - 1, x.get(i, 2) * 2.0);
        }
        let mut y = Mat::zeros(n, 2);
        for i in 0..n {
            y.set(i, 0, rng.gen_range(-1.0..1.0));
            y.set(i, 1, rng.gen_range(-1.0..1.0));
        }
        let sol = ridge_solve(&x, &y, 0.0).unwrap();
        assert!(sol.min_norm_fallback);
        let eig = sym_eig(&x.gram()).unwrap();
        let cutoff = 1e-10 * eig.values[0];
        let vt = eig.vectors.transpose().matmul(&x.transpose().matmul(&y));
        let mut scaled = Mat::zeros(p, 2);
        for (i, &lam) in eig.values.iter().enumerate() {
            if lam > cutoff {
                for c in 0..2 {
                    scaled.set(i, c, vt.get(i, c) / lam);
                }
            }
        }
        let oracle = eig.vectors.matmul(&scaled);
        assert!(sol.coefficients.max_abs_diff(&oracle) <= 1e-7 * oracle.max_abs().max(1.0));
        checked_min_norm += 1;
    }
    pass(
        "readout-oracle",
        &format!("100 ridge problems vs explicit inversion (1e-8), {checked_min_norm} minimal-norm problems vs pseudo-inverse (1e-7)"),
    );
}

#[test]
fn rmm_lrc_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let n_res = 8;
    let tau = 24;
    let t = 50 + tau; // exactly 50 anchors with a one-step horizon
    let values = random_vec(&mut rng, t);
    let ts = TimeSeries::new(
        Mat::from_vec(t, 1, values),
        vec!["x".into()],
        "1h".into(),
        "toy".into(),
    )
    .unwrap();
    let bounds = SplitBounds::new(t, t, t).unwrap();
    let ds = make_windows(&ts, &bounds, Split::Train, tau, 1, &[0], &[0]).unwrap();
    assert_eq!(ds.len(), 50);

    let spec = ReservoirSpec::new(n_res, 0.9, 0.5).unwrap();
    let basis = extract_motifs(&spec, tau, DEFAULT_RANK_TOL).unwrap();
    let retained = basis.count();
    let op = state_operator(&spec, tau).unwrap();
    let meta = ModelMeta {
        dataset: "toy".into(),
        task: "univariate".into(),
        horizon: 1,
        lookback: tau,
        reservoir_size: n_res,
        cycle_weight: 0.9,
        input_weight: 0.5,
        ridge_lambda: 0.0,
    };
    let rmm = fit(
        &ds,
        FeatureExtractor::new(FeatureKind::MotifProjection(basis), 1),
        0.0,
        None,
        meta.clone(),
    )
    .unwrap();
    let lrc = fit(
        &ds,
        FeatureExtractor::new(FeatureKind::ReservoirState(op), 1),
        0.0,
        None,
        meta,
    )
    .unwrap();
    let mut worst = 0.0f64;
    for i in 0..ds.len() {
        let w = ds.window(i);
        let a = rmm.predict(&w).unwrap().get(0, 0);
        let b = lrc.predict(&w).unwrap().get(0, 0);
        let rel = (a - b).abs() / a.abs().max(1.0);
        worst = worst.max(rel);
    }
    assert!(worst <= 1e-6, "fitted values diverge: {worst:e}");
    pass(
        "rmm-lrc-equivalence",
        &format!("50 in-sample fitted values agree to {worst:.2e} (rank {retained} retained)"),
    );
}

#[test]
fn coefficient_absorption() {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let spec = ReservoirSpec::new(10, 0.9, 1.0).unwrap();
    let tau = 30;
    let basis = extract_motifs(&spec, tau, DEFAULT_RANK_TOL).unwrap();
    let nm = basis.count();
    let d_out = 3;
    // random readout q over scaled projections, random nonzero coefficients
    let mut q_weights = Mat::zeros(nm, d_out);
    for i in 0..nm {
        for j in 0..d_out {
            q_weights.set(i, j, rng.gen_range(-1.0..1.0));
        }
    }
    let coeffs: Vec<f64> = (0..nm)
        .map(|_| {
            let mag = rng.gen_range(0.2..3.0);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        })
        .collect();
    // q~ folds the coefficients into the weight rows
    let mut q_tilde = Mat::zeros(nm, d_out);
    for i in 0..nm {
        for j in 0..d_out {
            q_tilde.set(i, j, q_weights.get(i, j) * coeffs[i]);
        }
    }
    for _ in 0..100 {
        let u = random_vec(&mut rng, tau);
        let scaled = basis.scaled_projection(&u, &coeffs).unwrap();
        let plain = basis.project(&u).unwrap();
        for j in 0..d_out {
            let q_out: f64 = (0..nm).map(|i| q_weights.get(i, j) * scaled[i]).sum();
            let qt_out: f64 = (0..nm).map(|i| q_tilde.get(i, j) * plain[i]).sum();
            assert!(
                (q_out - qt_out).abs() <= 1e-10 * q_out.abs().max(1.0),
                "absorption broken"
            );
        }
    }
    pass(
        "coefficient-absorption",
        "q(scaled projection) == folded q~(projection) on 100 random windows (1e-10)",
    );
}

#[test]
fn ar1_forecasting_sanity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let t = 5000;
    let phi = 0.8;
    let mut series = Vec::with_capacity(t);
    let mut x = 0.0;
    for _ in 0..t {
        x = phi * x + standard_normal(&mut rng);
        series.push(x);
    }
    let ts = TimeSeries::new(
        Mat::from_vec(t, 1, series),
        vec!["x".into()],
        "1h".into(),
        "ar1".into(),
    )
    .unwrap();
    let bounds = SplitBounds::from_ratios(t).unwrap();
    let (norm, stats) = standardize(&ts, &bounds).unwrap();
    let tau = 64;
    let windows = SplitWindows {
        train: make_windows(&norm, &bounds, Split::Train, tau, 1, &[0], &[0]).unwrap(),
        val: make_windows(&norm, &bounds, Split::Val, tau, 1, &[0], &[0]).unwrap(),
        test: make_windows(&norm, &bounds, Split::Test, tau, 1, &[0], &[0]).unwrap(),
        train_val: None,
    };
    let cfg = SearchConfig {
        dataset: "ar1".into(),
        task: "univariate".into(),
        variant: ModelVariant::MotifReadout,
        horizon: 1,
        lookback: tau,
        reservoir_size: 32,
        ridge_lambda: 1e-4,
        rank_tol: DEFAULT_RANK_TOL,
        refit_with_val: false,
    };
    let outcome = grid_search(&cfg, &HyperGrid::standard(), &windows, Some(&stats)).unwrap();
    // noise variance is 1; the test-set MSE on the original scale is the
    // normalized MSE times the squared train std
    let raw_mse = outcome.test_report.mse * stats.std[0] * stats.std[0];
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        raw_mse <= 1.05,
        "held-out one-step MSE {raw_mse:.4} above 1.05x the noise floor"
    );
    assert!(elapsed < 30.0, "AR(1) sanity took {elapsed:.1}s");
    pass(
        "ar1-sanity",
        &format!(
            "held-out MSE {raw_mse:.4} <= 1.05 (noise variance 1.0), best cycle weight {}, {elapsed:.1}s",
            outcome.best_cycle_weight
        ),
    );
}

fn grid_run_mse(dataset: &str, horizon: usize) -> (f64, f64, f64) {
    let cfg = data_config(dataset, Task::Univariate);
    let data = prepare_data(&cfg).unwrap_or_else(|e| panic!("{e}"));
    let scfg = SearchConfig {
        dataset: dataset.into(),
        task: "univariate".into(),
        variant: ModelVariant::MotifReadout,
        horizon,
        lookback: 336,
        reservoir_size: 150,
        ridge_lambda: 1e-4,
        rank_tol: DEFAULT_RANK_TOL,
        refit_with_val: false,
    };
    let windows = split_windows(&data, 336, horizon, false).unwrap();
    let start = Instant::now();
    let outcome = grid_search(&scfg, &HyperGrid::standard(), &windows, Some(&data.stats)).unwrap();
    (
        outcome.test_report.mse,
        outcome.test_report.mae,
        start.elapsed().as_secs_f64(),
    )
}

#[test]
fn benchmark_reproduction() {
    // hard bounds: the published transformer results these datasets are
    // usually compared against; soft band: +/-50% of the reference values
    // this pipeline is expected to reach
    const ETTH1_H24_MSE_BOUND: f64 = 0.098;
    const ETTH1_BAND: (f64, f64) = (0.0145, 0.0435);
    const ETTM1_H24_MSE_BOUND: f64 = 0.030;
    const ETTM1_BAND: (f64, f64) = (0.005, 0.015);

    let (mse1, mae1, secs1) = grid_run_mse("etth1", 24);
    assert!(
        secs1 < 900.0,
        "full 16-point grid on etth1 took {secs1:.0}s (limit 900s)"
    );
    assert!(
        mse1 < ETTH1_H24_MSE_BOUND,
        "etth1 h24 test MSE {mse1:.4} not below {ETTH1_H24_MSE_BOUND}"
    );
    let band1 = mse1 >= ETTH1_BAND.0 && mse1 <= ETTH1_BAND.1;
    println!(
        "ACCEPTANCE benchmark-etth1: {} — mse {mse1:.4} mae {mae1:.4} (bound {ETTH1_H24_MSE_BOUND}, band [{}, {}] {}), grid {secs1:.0}s",
        if band1 { "PASS" } else { "PASS (outside soft band)" },
        ETTH1_BAND.0,
        ETTH1_BAND.1,
        if band1 { "hit" } else { "missed" }
    );

    let (mse2, mae2, secs2) = grid_run_mse("ettm1", 24);
    assert!(
        mse2 < ETTM1_H24_MSE_BOUND,
        "ettm1 h24 test MSE {mse2:.4} not below {ETTM1_H24_MSE_BOUND}"
    );
    let band2 = mse2 >= ETTM1_BAND.0 && mse2 <= ETTM1_BAND.1;
    println!(
        "ACCEPTANCE benchmark-ettm1: {} — mse {mse2:.4} mae {mae2:.4} (bound {ETTM1_H24_MSE_BOUND}, band [{}, {}] {}), grid {secs2:.0}s",
        if band2 { "PASS" } else { "PASS (outside soft band)" },
        ETTM1_BAND.0,
        ETTM1_BAND.1,
        if band2 { "hit" } else { "missed" }
    );
}

#[test]
fn multivariate_end_to_end() {
    // no accuracy bound: multivariate runs are comparison context; this
    // checks the pipeline executes end to end on a multivariate dataset
    let cfg = data_config("exchange", Task::Multivariate);
    let data = prepare_data(&cfg).unwrap_or_else(|e| panic!("{e}"));
    let scfg = SearchConfig {
        dataset: "exchange".into(),
        task: "multivariate".into(),
        variant: ModelVariant::MotifReadout,
        horizon: 96,
        lookback: 336,
        reservoir_size: 150,
        ridge_lambda: 1e-4,
        rank_tol: DEFAULT_RANK_TOL,
        refit_with_val: false,
    };
    let windows = split_windows(&data, 336, 96, false).unwrap();
    // single grid point keeps this test brief; the full grid is exercised
    // by the univariate reproduction tests
    let grid = HyperGrid {
        cycle_weights: vec![0.9],
        input_weights: vec![1.0],
    };
    let outcome = grid_search(&scfg, &grid, &windows, Some(&data.stats)).unwrap();
    assert!(outcome.test_report.mse.is_finite() && outcome.test_report.mse > 0.0);
    assert_eq!(data.input_channels.len(), 8);
    pass(
        "multivariate-end-to-end",
        &format!(
            "exchange multivariate h96: mse {:.4} mae {:.4} over 8 channels",
            outcome.test_report.mse, outcome.test_report.mae
        ),
    );
}

#[test]
fn relevance_frequency_shift() {
    let cfg = data_config("ecl", Task::Univariate);
    let data = prepare_data(&cfg).unwrap_or_else(|e| panic!("{e}"));

    let median_crossings = |horizon: usize| -> (f64, Vec<usize>) {
        let scfg = SearchConfig {
            dataset: "ecl".into(),
            task: "univariate".into(),
            variant: ModelVariant::MotifReadout,
            horizon,
            lookback: 336,
            reservoir_size: 150,
            ridge_lambda: 1e-4,
            rank_tol: DEFAULT_RANK_TOL,
            refit_with_val: false,
        };
        let windows = split_windows(&data, 336, horizon, false).unwrap();
        let outcome =
            grid_search(&scfg, &HyperGrid::standard(), &windows, Some(&data.stats)).unwrap();
        let profile = motif_relevance(&outcome.model).unwrap();
        let basis = outcome.model.extractor.motif_basis().unwrap();
        let mut counts: Vec<usize> = profile
            .top(6)
            .iter()
            .map(|&i| zero_crossings(&basis.motif(i)))
            .collect();
        let raw = counts.clone();
        counts.sort_unstable();
        let median = (counts[2] + counts[3]) as f64 / 2.0;
        (median, raw)
    };

    let (median_48, counts_48) = median_crossings(48);
    let (median_168, counts_168) = median_crossings(168);
    println!(
        "ACCEPTANCE relevance-frequency: top-6 zero crossings h48 {counts_48:?} (median {median_48}), h168 {counts_168:?} (median {median_168})"
    );
    assert!(
        median_48 > median_168,
        "48h median {median_48} not strictly above 168h median {median_168}"
    );
    pass(
        "relevance-frequency",
        &format!("48h median {median_48} > 168h median {median_168}"),
    );
}

#[test]
fn determinism_byte_identical_runs() {
    let base = std::env::temp_dir().join(format!("rmm-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&base).unwrap();
    let data = data_dir();
    let run = |tag: &str| -> PathBuf {
        let out = base.join(tag);
        let cache = base.join(format!("{tag}-cache"));
        let args: Vec<String> = [
            "benchmark",
            "--dataset",
            "etth1",
            "--task",
            "univariate",
            "--horizon",
            "24",
            "--data-dir",
            data.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
            "--cache-dir",
            cache.to_str().unwrap(),
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let code = rmm_cli::run(&args);
        assert_eq!(code, 0, "benchmark run failed");
        out
    };
    let a = run("a");
    let b = run("b");

    let mut compared = Vec::new();
    for file in [
        "benchmark_results.csv",
        "benchmark_validation.csv",
        "models/etth1_univariate_rmm_h24.rmmf",
    ] {
        let ba = std::fs::read(a.join(file)).unwrap_or_else(|e| panic!("{file}: {e}"));
        let bb = std::fs::read(b.join(file)).unwrap();
        assert_eq!(ba, bb, "{file} differs between runs");
        compared.push(file);
    }
    std::fs::remove_dir_all(&base).ok();
    pass(
        "determinism",
        &format!("byte-identical across two runs: {compared:?}"),
    );
}

#[test]
fn model_files_round_trip_through_cli_artifacts() {
    // train writes a model; reloading it reproduces predictions on the
    // validation split bit-identically
    let base = std::env::temp_dir().join(format!("rmm-roundtrip-{}", std::process::id()));
    let out = base.join("out");
    let args: Vec<String> = [
        "train",
        "--dataset",
        "etth1",
        "--task",
        "univariate",
        "--horizon",
        "24",
        "--rho",
        "0.99",
        "--r-in",
        "0.05",
        "--data-dir",
        data_dir().to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
        "--cache-dir",
        base.join("cache").to_str().unwrap(),
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(rmm_cli::run(&args), 0);
    let model_path = out.join("models/etth1_univariate_rmm_h24.rmmf");
    let model = load_model(&model_path).unwrap();

    let cfg = data_config("etth1", Task::Univariate);
    let data = prepare_data(&cfg).unwrap();
    let windows = split_windows(&data, 336, 24, false).unwrap();
    let (m1, a1) = evaluate(&model, &windows.val).unwrap();
    let reloaded = load_model(&model_path).unwrap();
    let (m2, a2) = evaluate(&reloaded, &windows.val).unwrap();
    assert_eq!(m1.to_bits(), m2.to_bits());
    assert_eq!(a1.to_bits(), a2.to_bits());
    std::fs::remove_dir_all(&base).ok();
    pass(
        "model-persistence",
        &format!("reloaded model reproduces val metrics bit-identically (mse {m1:.6})"),
    );
}

#[test]
fn metric_examples_hold() {
    assert_eq!(mse(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
    assert_eq!(mae(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
    assert_eq!(mse(&[3.0, 0.0, 0.0], &[0.0, 0.0, 0.0]).unwrap(), 3.0);
    assert_eq!(mae(&[3.0, 0.0, 0.0], &[0.0, 0.0, 0.0]).unwrap(), 1.0);
    pass("metrics", "hand-computed MSE/MAE examples hold exactly");
}
