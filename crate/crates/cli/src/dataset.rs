//! Benchmark dataset presets, CSV ingestion and window assembly.
//!
//! Files are never downloaded: each preset documents its upstream source
//! and the expected file names; place the files in the data directory
//! (or point `RMM_DATA_DIR` at them). Known files are checksum-verified.

use std::path::{Path, PathBuf};

use rmm_core::eval::SplitWindows;
use rmm_core::series::{
    make_windows, standardize, NormStats, SeriesError, Split, SplitBounds, TimeSeries,
};
use rmm_core::Mat;

use crate::config::{FillPolicy, RunConfig, Task};
use crate::error::CliError;
use crate::manifest::sha256_file;

/// How a dataset is split chronologically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRule {
    /// Fixed row counts (the 12/4/4-month convention of the ETT benchmark).
    FixedRows {
        train: usize,
        val: usize,
        test: usize,
    },
    /// 70% / 10% / 20% chronological, floor arithmetic.
    Ratio,
}

/// Static description of one benchmark dataset.
pub struct Preset {
    pub id: &'static str,
    pub file_candidates: &'static [&'static str],
    pub timestamp_column: Option<&'static str>,
    pub split: SplitRule,
    /// Univariate target: first matching channel name, else the last column.
    pub univariate_target: &'static [&'static str],
    pub period: &'static str,
    pub source_url: &'static str,
    /// Known (file name, sha256) pairs, verified when matched.
    pub checksums: &'static [(&'static str, &'static str)],
    pub default_lookback: usize,
    pub default_reservoir: usize,
}

const ETT_HOUR_SPLIT: SplitRule = SplitRule::FixedRows {
    train: 12 * 30 * 24,
    val: 4 * 30 * 24,
    test: 4 * 30 * 24,
};

const ETT_QUARTER_SPLIT: SplitRule = SplitRule::FixedRows {
    train: 12 * 30 * 24 * 4,
    val: 4 * 30 * 24 * 4,
    test: 4 * 30 * 24 * 4,
};

pub static PRESETS: &[Preset] = &[
    Preset {
        id: "etth1",
        file_candidates: &["ETTh1.csv"],
        timestamp_column: Some("date"),
        split: ETT_HOUR_SPLIT,
        univariate_target: &["OT"],
        period: "1h",
        source_url: "https://github.com/zhouhaoyi/ETDataset (ETT-small/ETTh1.csv)",
        checksums: &[(
            "ETTh1.csv",
            "f18de3ad269cef59bb07b5438d79bb3042d3be49bdeecf01c1cd6d29695ee066",
        )],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "etth2",
        file_candidates: &["ETTh2.csv"],
        timestamp_column: Some("date"),
        split: ETT_HOUR_SPLIT,
        univariate_target: &["OT"],
        period: "1h",
        source_url: "https://github.com/zhouhaoyi/ETDataset (ETT-small/ETTh2.csv)",
        checksums: &[(
            "ETTh2.csv",
            "a3dc2c597b9218c7ce1cd55eb77b283fd459a1d09d753063f944967dd6b9218b",
        )],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "ettm1",
        file_candidates: &["ETTm1.csv"],
        timestamp_column: Some("date"),
        split: ETT_QUARTER_SPLIT,
        univariate_target: &["OT"],
        period: "15min",
        source_url: "https://github.com/zhouhaoyi/ETDataset (ETT-small/ETTm1.csv)",
        checksums: &[(
            "ETTm1.csv",
            "6ce1759b1a18e3328421d5d75fadcb316c449fcd7cec32820c8dafda71986c9e",
        )],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "ettm2",
        file_candidates: &["ETTm2.csv"],
        timestamp_column: Some("date"),
        split: ETT_QUARTER_SPLIT,
        univariate_target: &["OT"],
        period: "15min",
        source_url: "https://github.com/zhouhaoyi/ETDataset (ETT-small/ETTm2.csv)",
        checksums: &[(
            "ETTm2.csv",
            "db973ca252c6410a30d0469b13d696cf919648d0f3fd588c60f03fdbdbadd1fd",
        )],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "ecl",
        file_candidates: &["ECL.csv", "electricity.csv", "electricity.txt"],
        timestamp_column: Some("date"),
        split: SplitRule::Ratio,
        // The named client column of the standard preparation; headerless
        // exports fall back to the last column.
        univariate_target: &["MT_320"],
        period: "1h",
        source_url: "https://archive.ics.uci.edu/dataset/321/electricityloaddiagrams20112014 \
                     (hourly 321-client export: https://github.com/laiguokun/multivariate-time-series-data)",
        checksums: &[(
            "electricity.txt",
            "effb450b31108966937de8f4379e58b85aeee8058de0798290c405cd3ad2151b",
        )],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "weather",
        file_candidates: &["weather.csv", "WTH.csv"],
        timestamp_column: Some("date"),
        split: SplitRule::Ratio,
        univariate_target: &["OT", "WetBulbCelsius", "WetBulbFarenheit"],
        period: "1h",
        source_url: "https://www.ncei.noaa.gov/data/local-climatological-data/ \
                     (prepared benchmark exports circulate as weather.csv / WTH.csv)",
        checksums: &[],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "exchange",
        file_candidates: &["exchange_rate.csv", "exchange_rate.txt"],
        timestamp_column: Some("date"),
        split: SplitRule::Ratio,
        univariate_target: &["OT"],
        period: "1d",
        source_url: "https://github.com/laiguokun/multivariate-time-series-data (exchange_rate)",
        checksums: &[(
            "exchange_rate.txt",
            "0127465b51e3cd3c360f8eb2be30cfd294689a2a55903eb8245aafc396626c7f",
        )],
        default_lookback: 336,
        default_reservoir: 150,
    },
    Preset {
        id: "ili",
        file_candidates: &["national_illness.csv", "ILI.csv"],
        timestamp_column: Some("date"),
        split: SplitRule::Ratio,
        univariate_target: &["OT"],
        period: "1w",
        source_url: "https://gis.cdc.gov/grasp/fluview/fluportaldashboard.html \
                     (prepared benchmark export circulates as national_illness.csv)",
        checksums: &[],
        // 966 weekly rows cannot hold a 336-step lookback; the preset caps
        // it at 104 (two years) with a proportionally smaller reservoir.
        default_lookback: 104,
        default_reservoir: 50,
    },
];

pub fn preset(id: &str) -> Result<&'static Preset, CliError> {
    PRESETS.iter().find(|p| p.id == id).ok_or_else(|| {
        let known: Vec<&str> = PRESETS.iter().map(|p| p.id).collect();
        CliError::Config(format!(
            "unknown dataset '{id}' (known: {})",
            known.join(", ")
        ))
    })
}

/// Outcome of one file ingestion.
#[derive(Debug, Clone, PartialEq)]
pub struct IngestionReport {
    pub file: PathBuf,
    pub rows_read: usize,
    pub rows_kept: usize,
    pub rows_dropped: usize,
    pub rows_filled: usize,
    pub channels: usize,
}

impl IngestionReport {
    pub fn render(&self) -> String {
        format!(
            "ingested {}: {} rows read, {} kept, {} dropped, {} forward-filled, {} channels",
            self.file.display(),
            self.rows_read,
            self.rows_kept,
            self.rows_dropped,
            self.rows_filled,
            self.channels
        )
    }
}

/// Ingested, normalized, channel-selected data ready for windowing.
pub struct PreparedData {
    pub dataset: String,
    pub task: Task,
    pub series: TimeSeries,
    pub stats: NormStats,
    pub bounds: SplitBounds,
    pub input_channels: Vec<usize>,
    pub target_channels: Vec<usize>,
    pub report: Option<IngestionReport>,
    pub source_path: PathBuf,
    pub source_sha256: String,
    pub fill_policy: FillPolicy,
}

/// Locates the dataset file in the data directory.
pub fn resolve_file(p: &Preset, data_dir: &Path) -> Result<PathBuf, CliError> {
    for cand in p.file_candidates {
        let path = data_dir.join(cand);
        if path.is_file() {
            return Ok(path);
        }
    }
    let expected: Vec<String> = p
        .file_candidates
        .iter()
        .map(|c| data_dir.join(c).display().to_string())
        .collect();
    Err(CliError::Data(format!(
        "dataset '{}' not found; expected one of [{}]. Obtain it from {} and place it there \
         (no network access is attempted)",
        p.id,
        expected.join(", "),
        p.source_url
    )))
}

/// Parses a benchmark CSV into a raw series.
///
/// The first line is treated as a header when any field is non-numeric.
/// Timestamps (when the preset names a timestamp column present in the
/// header) must be strictly increasing in lexicographic order. Rows with
/// missing or unparseable values are dropped under the reject policy or
/// forward-filled from the previous row; more than `max(10, 1%)` dropped
/// rows is an error.
pub fn load_csv(
    p: &Preset,
    path: &Path,
    fill_policy: FillPolicy,
) -> Result<(TimeSeries, IngestionReport), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| CliError::Data(format!("{} is empty", path.display())))?;

    let first_fields: Vec<&str> = first.split(',').collect();
    let has_header = first_fields
        .iter()
        .any(|f| !f.trim().is_empty() && f.trim().parse::<f64>().is_err());

    let (names, ts_col, width): (Vec<String>, Option<usize>, usize) = if has_header {
        let names: Vec<String> = first_fields.iter().map(|s| s.trim().to_string()).collect();
        let ts_col = p
            .timestamp_column
            .and_then(|tc| names.iter().position(|n| n == tc));
        (names, ts_col, first_fields.len())
    } else {
        let width = first_fields.len();
        let names = (0..width).map(|i| format!("c{i:03}")).collect();
        (names, None, width)
    };

    let channel_names: Vec<String> = match ts_col {
        Some(t) => names
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != t)
            .map(|(_, n)| n.clone())
            .collect(),
        None => names,
    };
    let channels = channel_names.len();

    let mut rows: Vec<f64> = Vec::new();
    let mut prev_row: Option<Vec<f64>> = None;
    let mut prev_ts: Option<String> = None;
    let mut rows_read = 0usize;
    let mut rows_dropped = 0usize;
    let mut rows_filled = 0usize;

    let data_lines = if has_header {
        Box::new(lines) as Box<dyn Iterator<Item = &str>>
    } else {
        Box::new(std::iter::once(first).chain(lines))
    };

    for (lineno, line) in data_lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        rows_read += 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            rows_dropped += 1;
            continue;
        }
        if let Some(t) = ts_col {
            let stamp = fields[t].trim();
            if let Some(prev) = &prev_ts {
                if stamp == prev {
                    return Err(CliError::Data(format!(
                        "{}: duplicate timestamp '{stamp}' at data row {}",
                        path.display(),
                        lineno + 1
                    )));
                }
                if stamp < prev.as_str() {
                    return Err(CliError::Data(format!(
                        "{}: non-monotone timestamp '{stamp}' at data row {}",
                        path.display(),
                        lineno + 1
                    )));
                }
            }
            prev_ts = Some(stamp.to_string());
        }

        let mut parsed: Vec<f64> = Vec::with_capacity(channels);
        let mut filled_here = false;
        let mut reject = false;
        let mut ci = 0usize;
        for (i, field) in fields.iter().enumerate() {
            if Some(i) == ts_col {
                continue;
            }
            let v = field.trim().parse::<f64>().ok().filter(|x| x.is_finite());
            match v {
                Some(x) => parsed.push(x),
                None => match fill_policy {
                    FillPolicy::Reject => {
                        reject = true;
                        break;
                    }
                    FillPolicy::ForwardFill => match &prev_row {
                        Some(prev) => {
                            parsed.push(prev[ci]);
                            filled_here = true;
                        }
                        None => {
                            reject = true;
                            break;
                        }
                    },
                },
            }
            ci += 1;
        }
        if reject || parsed.len() != channels {
            rows_dropped += 1;
            continue;
        }
        if filled_here {
            rows_filled += 1;
        }
        rows.extend_from_slice(&parsed);
        prev_row = Some(parsed);
    }

    let rows_kept = rows.len() / channels.max(1);
    let tolerance = 10usize.max(rows_read / 100);
    if rows_dropped > tolerance {
        return Err(CliError::Data(format!(
            "{}: {} of {} rows malformed, beyond tolerance {}",
            path.display(),
            rows_dropped,
            rows_read,
            tolerance
        )));
    }
    if rows_kept == 0 {
        return Err(CliError::Data(format!(
            "{}: no usable data rows",
            path.display()
        )));
    }

    let values = Mat::from_vec(rows_kept, channels, rows);
    let ts = TimeSeries::new(
        values,
        channel_names,
        p.period.to_string(),
        p.id.to_string(),
    )
    .map_err(|e: SeriesError| CliError::Data(e.to_string()))?;
    let report = IngestionReport {
        file: path.to_path_buf(),
        rows_read,
        rows_kept,
        rows_dropped,
        rows_filled,
        channels,
    };
    Ok((ts, report))
}

/// Index of the univariate target channel: first name match, else last.
pub fn target_channel(p: &Preset, ts: &TimeSeries) -> usize {
    for name in p.univariate_target {
        if let Some(i) = ts.channel_index(name) {
            return i;
        }
    }
    ts.channels() - 1
}

pub fn split_bounds(p: &Preset, len: usize) -> Result<SplitBounds, CliError> {
    match p.split {
        SplitRule::FixedRows { train, val, test } => {
            let need = train + val + test;
            if len < need {
                return Err(CliError::Data(format!(
                    "dataset '{}' has {len} rows, needs {need} for its fixed split",
                    p.id
                )));
            }
            SplitBounds::new(train, train + val, train + val + test).map_err(CliError::from)
        }
        SplitRule::Ratio => SplitBounds::from_ratios(len).map_err(CliError::from),
    }
}

/// Ingests, verifies, normalizes and channel-selects a dataset per config.
pub fn prepare_data(cfg: &RunConfig) -> Result<PreparedData, CliError> {
    let p = preset(&cfg.dataset)?;
    let path = resolve_file(p, &cfg.data_dir)?;
    let sha = sha256_file(&path).map_err(|e| CliError::io("hashing dataset", e))?;
    if let Some(name) = path.file_name().and_then(|n| n.to_str()) {
        if let Some((_, expected)) = p.checksums.iter().find(|(f, _)| *f == name) {
            if *expected != sha {
                return Err(CliError::Data(format!(
                    "checksum mismatch for {}: expected {expected}, got {sha}",
                    path.display()
                )));
            }
        }
    }

    let (raw, report) = load_csv(p, &path, cfg.fill_policy)?;
    let bounds = split_bounds(p, raw.len())?;

    // Select channels for the task before normalizing; statistics are
    // per-channel so restriction commutes with standardization.
    let (ts_selected, input_channels, target_channels) = match cfg.task {
        Task::Univariate => {
            let t = target_channel(p, &raw);
            let values = {
                let mut m = Mat::zeros(raw.len(), 1);
                for i in 0..raw.len() {
                    m.set(i, 0, raw.values().get(i, t));
                }
                m
            };
            let ts = TimeSeries::new(
                values,
                vec![raw.channel_names()[t].clone()],
                raw.period().to_string(),
                raw.name().to_string(),
            )
            .map_err(CliError::from)?;
            (ts, vec![0usize], vec![0usize])
        }
        Task::Multivariate => {
            let all: Vec<usize> = (0..raw.channels()).collect();
            (raw, all.clone(), all)
        }
    };

    let (normalized, stats) = standardize(&ts_selected, &bounds).map_err(CliError::from)?;
    Ok(PreparedData {
        dataset: cfg.dataset.clone(),
        task: cfg.task,
        series: normalized,
        stats,
        bounds,
        input_channels,
        target_channels,
        report: Some(report),
        source_path: path,
        source_sha256: sha,
        fill_policy: cfg.fill_policy,
    })
}

/// Builds the train/val/test window sets for one horizon.
pub fn split_windows(
    data: &PreparedData,
    lookback: usize,
    horizon: usize,
    include_train_val: bool,
) -> Result<SplitWindows, CliError> {
    let mk = |split| {
        make_windows(
            &data.series,
            &data.bounds,
            split,
            lookback,
            horizon,
            &data.input_channels,
            &data.target_channels,
        )
        .map_err(CliError::from)
    };
    Ok(SplitWindows {
        train: mk(Split::Train)?,
        val: mk(Split::Val)?,
        test: mk(Split::Test)?,
        train_val: if include_train_val {
            Some(mk(Split::TrainVal)?)
        } else {
            None
        },
    })
}
