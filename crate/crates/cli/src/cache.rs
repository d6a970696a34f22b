//! Binary cache of prepared (normalized, channel-selected) datasets.
//!
//! Layout of `<dataset>_<task>.rmmw`, all integers and floats little-endian:
//!
//! ```text
//! magic            4 bytes  "RMMW"
//! version          u32      1
//! rows             u64
//! cols             u64      channels kept after task selection
//! train_end        u64
//! val_end          u64
//! test_end         u64
//! n_names          u32      then per name: u32 byte length + UTF-8 bytes
//! n_input          u32      then u64 channel indices
//! n_target         u32      then u64 channel indices
//! means            cols x f64
//! stds             cols x f64
//! values           rows*cols x f64, row-major
//! ```
//!
//! A JSON sidecar `<dataset>_<task>.json` records provenance (source file,
//! checksum, fill policy, ingestion counts); a cache entry is valid only if
//! the sidecar's recorded source checksum matches the file on disk.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rmm_core::series::{NormStats, SplitBounds, TimeSeries};
use rmm_core::Mat;

use crate::config::{FillPolicy, Task};
use crate::dataset::PreparedData;
use crate::error::CliError;
use crate::manifest::{json_escape, json_str_field};

const MAGIC: &[u8; 4] = b"RMMW";
const VERSION: u32 = 1;

pub fn cache_paths(cache_dir: &Path, dataset: &str, task: Task) -> (PathBuf, PathBuf) {
    let stem = format!("{dataset}_{}", task.label());
    (
        cache_dir.join(format!("{stem}.rmmw")),
        cache_dir.join(format!("{stem}.json")),
    )
}

pub fn write_cache(cache_dir: &Path, data: &PreparedData) -> Result<(PathBuf, PathBuf), CliError> {
    std::fs::create_dir_all(cache_dir).map_err(|e| CliError::io("creating cache dir", e))?;
    let (bin_path, side_path) = cache_paths(cache_dir, &data.dataset, data.task);

    let mut out: Vec<u8> = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let rows = data.series.len() as u64;
    let cols = data.series.channels() as u64;
    out.extend_from_slice(&rows.to_le_bytes());
    out.extend_from_slice(&cols.to_le_bytes());
    out.extend_from_slice(&(data.bounds.train_end as u64).to_le_bytes());
    out.extend_from_slice(&(data.bounds.val_end as u64).to_le_bytes());
    out.extend_from_slice(&(data.bounds.test_end as u64).to_le_bytes());
    out.extend_from_slice(&(data.series.channels() as u32).to_le_bytes());
    for name in data.series.channel_names() {
        out.extend_from_slice(&(name.len() as u32).to_le_bytes());
        out.extend_from_slice(name.as_bytes());
    }
    out.extend_from_slice(&(data.input_channels.len() as u32).to_le_bytes());
    for &c in &data.input_channels {
        out.extend_from_slice(&(c as u64).to_le_bytes());
    }
    out.extend_from_slice(&(data.target_channels.len() as u32).to_le_bytes());
    for &c in &data.target_channels {
        out.extend_from_slice(&(c as u64).to_le_bytes());
    }
    for &m in &data.stats.mean {
        out.extend_from_slice(&m.to_le_bytes());
    }
    for &s in &data.stats.std {
        out.extend_from_slice(&s.to_le_bytes());
    }
    for &v in data.series.values().as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    let mut f =
        std::fs::File::create(&bin_path).map_err(|e| CliError::io("creating cache file", e))?;
    f.write_all(&out)
        .map_err(|e| CliError::io("writing cache file", e))?;

    let report = data.report.as_ref();
    let sidecar = format!(
        "{{\n  \"dataset\": \"{}\",\n  \"task\": \"{}\",\n  \"fill_policy\": \"{}\",\n  \
         \"source_path\": \"{}\",\n  \"source_sha256\": \"{}\",\n  \"rows\": \"{}\",\n  \
         \"channels\": \"{}\",\n  \"rows_dropped\": \"{}\",\n  \"period\": \"{}\"\n}}\n",
        json_escape(&data.dataset),
        data.task.label(),
        data.fill_policy.label(),
        json_escape(&data.source_path.display().to_string()),
        data.source_sha256,
        data.series.len(),
        data.series.channels(),
        report.map(|r| r.rows_dropped).unwrap_or(0),
        json_escape(data.series.period()),
    );
    std::fs::write(&side_path, sidecar).map_err(|e| CliError::io("writing cache sidecar", e))?;
    Ok((bin_path, side_path))
}

/// True when a cache entry exists and matches the given source checksum,
/// task and fill policy.
pub fn cache_valid(
    cache_dir: &Path,
    dataset: &str,
    task: Task,
    fill_policy: FillPolicy,
    source_sha256: &str,
) -> bool {
    let (bin_path, side_path) = cache_paths(cache_dir, dataset, task);
    if !bin_path.is_file() {
        return false;
    }
    let Ok(doc) = std::fs::read_to_string(&side_path) else {
        return false;
    };
    json_str_field(&doc, "source_sha256").as_deref() == Some(source_sha256)
        && json_str_field(&doc, "dataset").as_deref() == Some(dataset)
        && json_str_field(&doc, "task").as_deref() == Some(task.label())
        && json_str_field(&doc, "fill_policy").as_deref() == Some(fill_policy.label())
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CliError> {
        if self.at + n > self.buf.len() {
            return Err(CliError::Data("cache file truncated".into()));
        }
        let s = &self.buf[self.at..self.at + n];
        self.at += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, CliError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, CliError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, CliError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Loads a cache entry back into a `PreparedData` (without an ingestion
/// report; provenance fields come from the sidecar).
pub fn read_cache(cache_dir: &Path, dataset: &str, task: Task) -> Result<PreparedData, CliError> {
    let (bin_path, side_path) = cache_paths(cache_dir, dataset, task);
    let mut bytes = Vec::new();
    std::fs::File::open(&bin_path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| CliError::io("reading cache file", e))?;
    let mut r = Reader { buf: &bytes, at: 0 };
    if r.take(4)? != MAGIC {
        return Err(CliError::Data(format!(
            "{} is not a dataset cache (bad magic)",
            bin_path.display()
        )));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(CliError::Data(format!(
            "unsupported cache version {version}"
        )));
    }
    let rows = r.u64()? as usize;
    let cols = r.u64()? as usize;
    let train_end = r.u64()? as usize;
    let val_end = r.u64()? as usize;
    let test_end = r.u64()? as usize;
    let n_names = r.u32()? as usize;
    let mut names = Vec::with_capacity(n_names);
    for _ in 0..n_names {
        let len = r.u32()? as usize;
        let raw = r.take(len)?;
        names.push(
            String::from_utf8(raw.to_vec())
                .map_err(|_| CliError::Data("cache channel name not UTF-8".into()))?,
        );
    }
    let n_input = r.u32()? as usize;
    let mut input_channels = Vec::with_capacity(n_input);
    for _ in 0..n_input {
        input_channels.push(r.u64()? as usize);
    }
    let n_target = r.u32()? as usize;
    let mut target_channels = Vec::with_capacity(n_target);
    for _ in 0..n_target {
        target_channels.push(r.u64()? as usize);
    }
    let mut mean = Vec::with_capacity(cols);
    for _ in 0..cols {
        mean.push(r.f64()?);
    }
    let mut std = Vec::with_capacity(cols);
    for _ in 0..cols {
        std.push(r.f64()?);
    }
    let mut values = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        values.push(r.f64()?);
    }

    let doc = std::fs::read_to_string(&side_path).unwrap_or_default();
    let period = json_str_field(&doc, "period").unwrap_or_default();
    let source_path = json_str_field(&doc, "source_path").unwrap_or_default();
    let source_sha256 = json_str_field(&doc, "source_sha256").unwrap_or_default();
    let fill_policy = match json_str_field(&doc, "fill_policy").as_deref() {
        Some("ffill") => FillPolicy::ForwardFill,
        _ => FillPolicy::Reject,
    };

    let series = TimeSeries::new(
        Mat::from_vec(rows, cols, values),
        names,
        period,
        dataset.into(),
    )
    .map_err(CliError::from)?;
    Ok(PreparedData {
        dataset: dataset.into(),
        task,
        series,
        stats: NormStats { mean, std },
        bounds: SplitBounds::new(train_end, val_end, test_end).map_err(CliError::from)?,
        input_channels,
        target_channels,
        report: None,
        source_path: PathBuf::from(source_path),
        source_sha256,
        fill_policy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rmm_core::series::standardize;

    fn toy_prepared(dir: &Path) -> PreparedData {
        let mut values = Vec::new();
        for i in 0..40 {
            values.push(i as f64);
            values.push((i as f64) * 0.5 - 3.0);
        }
        let ts = TimeSeries::new(
            Mat::from_vec(40, 2, values),
            vec!["a".into(), "b".into()],
            "1h".into(),
            "toy".into(),
        )
        .unwrap();
        let bounds = SplitBounds::new(28, 32, 40).unwrap();
        let (norm, stats) = standardize(&ts, &bounds).unwrap();
        PreparedData {
            dataset: "etth1".into(),
            task: Task::Multivariate,
            series: norm,
            stats,
            bounds,
            input_channels: vec![0, 1],
            target_channels: vec![0, 1],
            report: None,
            source_path: dir.join("toy.csv"),
            source_sha256: "cafe".into(),
            fill_policy: FillPolicy::Reject,
        }
    }

    #[test]
    fn cache_round_trips_bit_exact() {
        let dir = std::env::temp_dir().join(format!("rmm-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let data = toy_prepared(&dir);
        write_cache(&dir, &data).unwrap();
        assert!(cache_valid(
            &dir,
            "etth1",
            Task::Multivariate,
            FillPolicy::Reject,
            "cafe"
        ));
        assert!(!cache_valid(
            &dir,
            "etth1",
            Task::Multivariate,
            FillPolicy::Reject,
            "beef"
        ));
        let loaded = read_cache(&dir, "etth1", Task::Multivariate).unwrap();
        assert_eq!(loaded.series.values(), data.series.values());
        assert_eq!(loaded.stats, data.stats);
        assert_eq!(loaded.bounds, data.bounds);
        assert_eq!(loaded.input_channels, data.input_channels);
        std::fs::remove_dir_all(&dir).ok();
    }
}
