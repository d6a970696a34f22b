//! CSV and text-table emitters. All output is a pure function of its
//! inputs (no timestamps), so repeated runs write identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use rmm_core::eval::EvalReport;
use rmm_core::Mat;

use crate::baselines::{baselines_for, Baseline};
use crate::error::CliError;

/// Full-precision scientific notation that round-trips the exact bits.
pub fn fmt_full(v: f64) -> String {
    format!("{v:e}")
}

pub fn write_matrix_csv(path: &Path, m: &Mat, headers: Option<&[String]>) -> Result<(), CliError> {
    let mut out = String::new();
    if let Some(h) = headers {
        out.push_str(&h.join(","));
        out.push('\n');
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| fmt_full(*v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| CliError::io("writing csv", e))
}

pub fn write_vector_csv(path: &Path, header: &str, v: &[f64]) -> Result<(), CliError> {
    let mut out = String::from(header);
    out.push('\n');
    for x in v {
        out.push_str(&fmt_full(*x));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| CliError::io("writing csv", e))
}

pub const REPORT_HEADER: &str =
    "dataset,task,variant,horizon,lookback,reservoir_size,cycle_weight,input_weight,ridge_lambda,split,mse,mae";

pub fn report_csv_row(r: &EvalReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.dataset,
        r.task,
        r.variant,
        r.horizon,
        r.lookback,
        r.reservoir_size,
        r.cycle_weight,
        r.input_weight,
        r.ridge_lambda,
        r.split.label(),
        fmt_full(r.mse),
        fmt_full(r.mae)
    )
}

pub fn write_reports_csv(path: &Path, reports: &[EvalReport]) -> Result<(), CliError> {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&report_csv_row(r));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| CliError::io("writing reports csv", e))
}

/// Plain-text comparison table: one row per (dataset, horizon) with our
/// metrics next to the published baselines for that task.
pub fn comparison_table(task: &str, rows: &[EvalReport]) -> String {
    let mut models: Vec<&'static str> = Vec::new();
    for r in rows {
        for b in baselines_for(&r.dataset, task, r.horizon) {
            if !models.contains(&b.model) {
                models.push(b.model);
            }
        }
    }

    let mut out = String::new();
    let _ = write!(
        out,
        "{:<10} {:>7} | {:>8} {:>8}",
        "dataset", "horizon", "MSE", "MAE"
    );
    for m in &models {
        let _ = write!(out, " | {:>16} {:>8}", format!("{m} MSE"), "MAE");
    }
    out.push('\n');
    let width = out.lines().next().map(|l| l.len()).unwrap_or(0);
    out.push_str(&"-".repeat(width));
    out.push('\n');

    for r in rows {
        let _ = write!(
            out,
            "{:<10} {:>7} | {:>8.3} {:>8.3}",
            r.dataset, r.horizon, r.mse, r.mae
        );
        let baselines: Vec<&Baseline> = baselines_for(&r.dataset, task, r.horizon);
        for m in &models {
            match baselines.iter().find(|b| b.model == *m) {
                Some(b) => {
                    let _ = write!(out, " | {:>16.3} {:>8.3}", b.mse, b.mae);
                }
                None => {
                    let _ = write!(out, " | {:>16} {:>8}", "-", "-");
                }
            }
        }
        out.push('\n');
    }
    out
}
