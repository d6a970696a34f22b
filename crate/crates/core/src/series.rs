//! In-memory multichannel series, chronological splits, normalization and
//! sliding-window supervision.
//!
//! Ingestion from files lives in the companion crate; everything here
//! operates on matrices that are already in memory.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmath::{abs, sqrt};
use crate::mat::Mat;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesError {
    /// Non-finite value encountered where clean data is required.
    NonFinite { row: usize, col: usize },
    /// Channel index outside the series.
    ChannelOutOfRange { channel: usize, channels: usize },
    /// Split boundaries are not chronological or exceed the series length.
    InvalidSplit,
    /// Train segment too short to estimate statistics.
    TrainTooShort { len: usize },
    /// A channel is constant on the train segment.
    ZeroVariance { channel: usize },
    /// Lookback and horizon must both be positive.
    DegenerateWindow,
    /// The requested partition cannot hold a single target block.
    PartitionTooShort,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonFinite { row, col } => {
                write!(f, "non-finite value at row {row}, channel {col}")
            }
            SeriesError::ChannelOutOfRange { channel, channels } => {
                write!(f, "channel {channel} out of range (series has {channels})")
            }
            SeriesError::InvalidSplit => write!(f, "split boundaries invalid"),
            SeriesError::TrainTooShort { len } => {
                write!(f, "train segment of length {len} too short")
            }
            SeriesError::ZeroVariance { channel } => {
                write!(
                    f,
                    "channel {channel} has zero variance on the train segment"
                )
            }
            SeriesError::DegenerateWindow => write!(f, "lookback and horizon must be positive"),
            SeriesError::PartitionTooShort => write!(f, "partition too short for any window"),
        }
    }
}

impl core::error::Error for SeriesError {}

/// A multichannel series: `T x D` values, one row per time step.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Mat,
    channel_names: Vec<String>,
    period: String,
    name: String,
}

impl TimeSeries {
    /// Validates that every value is finite.
    pub fn new(
        values: Mat,
        channel_names: Vec<String>,
        period: String,
        name: String,
    ) -> Result<Self, SeriesError> {
        assert_eq!(values.cols(), channel_names.len(), "one name per channel");
        for i in 0..values.rows() {
            for (j, &v) in values.row(i).iter().enumerate() {
                if !v.is_finite() {
                    return Err(SeriesError::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(TimeSeries {
            values,
            channel_names,
            period,
            name,
        })
    }

    pub fn len(&self) -> usize {
        self.values.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn channels(&self) -> usize {
        self.values.cols()
    }

    pub fn values(&self) -> &Mat {
        &self.values
    }

    pub fn channel_names(&self) -> &[String] {
        &self.channel_names
    }

    pub fn period(&self) -> &str {
        &self.period
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn channel_index(&self, name: &str) -> Option<usize> {
        self.channel_names.iter().position(|n| n == name)
    }
}

/// Chronological split: train `[0, train_end)`, validation
/// `[train_end, val_end)`, test `[val_end, test_end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitBounds {
    pub train_end: usize,
    pub val_end: usize,
    pub test_end: usize,
}

impl SplitBounds {
    pub fn new(train_end: usize, val_end: usize, test_end: usize) -> Result<Self, SeriesError> {
        if train_end == 0 || train_end > val_end || val_end > test_end {
            return Err(SeriesError::InvalidSplit);
        }
        Ok(SplitBounds {
            train_end,
            val_end,
            test_end,
        })
    }

    /// Floor-ratio split in the style of the standard long-horizon
    /// forecasting benchmarks: `floor(0.7 T)` train rows, `floor(0.2 T)`
    /// test rows, remainder validation.
    pub fn from_ratios(len: usize) -> Result<Self, SeriesError> {
        let train = len * 7 / 10;
        let test = len * 2 / 10;
        let val = len.saturating_sub(train + test);
        SplitBounds::new(train, train + val, train + val + test)
    }

    pub fn range(&self, split: Split) -> (usize, usize) {
        match split {
            Split::Train => (0, self.train_end),
            Split::Val => (self.train_end, self.val_end),
            Split::Test => (self.val_end, self.test_end),
            Split::TrainVal => (0, self.val_end),
        }
    }
}

/// Which partition a windowed dataset is anchored in. `TrainVal` is the
/// concatenation used when refitting after model selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Val,
    Test,
    TrainVal,
}

impl Split {
    pub fn label(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
            Split::TrainVal => "train+val",
        }
    }
}

/// Per-channel mean and standard deviation estimated on the train segment.
/// The standard deviation uses the population denominator `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl NormStats {
    pub fn normalize_value(&self, channel: usize, v: f64) -> f64 {
        (v - self.mean[channel]) / self.std[channel]
    }

    pub fn denormalize_value(&self, channel: usize, v: f64) -> f64 {
        v * self.std[channel] + self.mean[channel]
    }
}

/// Z-scores every channel using statistics from the train segment only.
/// Errors if any channel is (numerically) constant there.
pub fn standardize(
    ts: &TimeSeries,
    bounds: &SplitBounds,
) -> Result<(TimeSeries, NormStats), SeriesError> {
    if bounds.test_end > ts.len() {
        return Err(SeriesError::InvalidSplit);
    }
    let train_len = bounds.train_end;
    if train_len < 2 {
        return Err(SeriesError::TrainTooShort { len: train_len });
    }
    let d = ts.channels();
    let mut mean = vec![0.0; d];
    for i in 0..train_len {
        for (m, &v) in mean.iter_mut().zip(ts.values.row(i).iter()) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= train_len as f64;
    }
    let mut var = vec![0.0; d];
    for i in 0..train_len {
        for (s, (&v, &m)) in var.iter_mut().zip(ts.values.row(i).iter().zip(mean.iter())) {
            let dlt = v - m;
            *s += dlt * dlt;
        }
    }
    let mut std = vec![0.0; d];
    for (j, (s, &m)) in std.iter_mut().zip(mean.iter()).enumerate() {
        let v = var[j] / train_len as f64;
        *s = sqrt(v);
        if *s <= 1e-12 * (1.0 + abs(m)) {
            return Err(SeriesError::ZeroVariance { channel: j });
        }
    }

    let mut values = ts.values.clone();
    for i in 0..values.rows() {
        let row = values.row_mut(i);
        for j in 0..d {
            row[j] = (row[j] - mean[j]) / std[j];
        }
    }
    let normalized = TimeSeries {
        values,
        channel_names: ts.channel_names.clone(),
        period: ts.period.clone(),
        name: ts.name.clone(),
    };
    Ok((normalized, NormStats { mean, std }))
}

/// Inverse of [`standardize`] given the stored statistics.
pub fn denormalize(ts: &TimeSeries, stats: &NormStats) -> TimeSeries {
    let mut values = ts.values.clone();
    for i in 0..values.rows() {
        let row = values.row_mut(i);
        for (j, v) in row.iter_mut().enumerate() {
            *v = stats.denormalize_value(j, *v);
        }
    }
    TimeSeries {
        values,
        channel_names: ts.channel_names.clone(),
        period: ts.period.clone(),
        name: ts.name.clone(),
    }
}

/// Sliding-window supervision over one partition.
///
/// Anchors index the last lookback row of each window (0-based). The window
/// covers rows `anchor - tau + 1 ..= anchor` of the stored values; the
/// target block covers rows `anchor + 1 ..= anchor + horizon` restricted to
/// the target channels, flattened time-major. Windows anchored in the
/// validation or test partition may reach back into earlier rows for
/// lookback context, but each target block lies strictly inside the owning
/// partition.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedDataset {
    values: Mat,
    anchors: Vec<usize>,
    lookback: usize,
    horizon: usize,
    input_channels: Vec<usize>,
    target_channels: Vec<usize>,
    split: Split,
}

impl WindowedDataset {
    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn lookback(&self) -> usize {
        self.lookback
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn input_channels(&self) -> usize {
        self.input_channels.len()
    }

    pub fn target_channels(&self) -> usize {
        self.target_channels.len()
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn anchor(&self, i: usize) -> usize {
        self.anchors[i]
    }

    /// Flattened target dimension `horizon * target_channels`.
    pub fn target_dim(&self) -> usize {
        self.horizon * self.target_channels.len()
    }

    /// Copies input channel `c` of window `i` into `buf` (length `lookback`).
    pub fn window_channel_into(&self, i: usize, c: usize, buf: &mut [f64]) {
        debug_assert_eq!(buf.len(), self.lookback);
        let anchor = self.anchors[i];
        let col = self.input_channels[c];
        let start = anchor + 1 - self.lookback;
        for (k, slot) in buf.iter_mut().enumerate() {
            *slot = self.values.get(start + k, col);
        }
    }

    /// The full window of sample `i` as a `lookback x input_channels` matrix.
    pub fn window(&self, i: usize) -> Mat {
        let mut w = Mat::zeros(self.lookback, self.input_channels.len());
        let anchor = self.anchors[i];
        let start = anchor + 1 - self.lookback;
        for r in 0..self.lookback {
            for (c, &col) in self.input_channels.iter().enumerate() {
                w.set(r, c, self.values.get(start + r, col));
            }
        }
        w
    }

    /// Copies the flattened target block of sample `i` into `buf`
    /// (length `target_dim`), time-major then channel.
    pub fn target_into(&self, i: usize, buf: &mut [f64]) {
        debug_assert_eq!(buf.len(), self.target_dim());
        let anchor = self.anchors[i];
        let q = self.target_channels.len();
        for h in 0..self.horizon {
            for (k, &col) in self.target_channels.iter().enumerate() {
                buf[h * q + k] = self.values.get(anchor + 1 + h, col);
            }
        }
    }

    pub fn target(&self, i: usize) -> Vec<f64> {
        let mut buf = vec![0.0; self.target_dim()];
        self.target_into(i, &mut buf);
        buf
    }
}

/// Builds the sliding-window dataset for one partition.
///
/// Valid anchors `t` satisfy: the lookback block `t - tau + 1 ..= t` stays
/// within the raw series (context may cross into earlier partitions), and
/// the target block `t + 1 ..= t + horizon` lies inside the owning
/// partition. An empty anchor set is allowed (boundary case
/// `tau = T, horizon = 1`); fitting rejects empty datasets downstream.
pub fn make_windows(
    ts: &TimeSeries,
    bounds: &SplitBounds,
    split: Split,
    lookback: usize,
    horizon: usize,
    input_channels: &[usize],
    target_channels: &[usize],
) -> Result<WindowedDataset, SeriesError> {
    if lookback == 0 || horizon == 0 {
        return Err(SeriesError::DegenerateWindow);
    }
    if bounds.test_end > ts.len() {
        return Err(SeriesError::InvalidSplit);
    }
    for &c in input_channels.iter().chain(target_channels.iter()) {
        if c >= ts.channels() {
            return Err(SeriesError::ChannelOutOfRange {
                channel: c,
                channels: ts.channels(),
            });
        }
    }
    let (seg_start, seg_end) = bounds.range(split);

    // An anchor t is valid when the lookback block t-tau+1..=t stays inside
    // the raw series, the target block starts inside the partition
    // (t + 1 >= seg_start), and it ends inside it (t + horizon < seg_end).
    let min_anchor = if seg_start == 0 {
        lookback - 1
    } else {
        (seg_start - 1).max(lookback - 1)
    };
    let anchors: Vec<usize> = if seg_end > horizon {
        let max_anchor = seg_end - 1 - horizon;
        if min_anchor <= max_anchor {
            (min_anchor..=max_anchor).collect()
        } else {
            Vec::new()
        }
    } else {
        Vec::new()
    };

    // Keep only the channels that windows or targets actually read.
    let mut keep: Vec<usize> = Vec::new();
    for &c in input_channels.iter().chain(target_channels.iter()) {
        if !keep.contains(&c) {
            keep.push(c);
        }
    }
    keep.sort_unstable();
    let remap = |c: usize| keep.iter().position(|&k| k == c).unwrap();
    let mut values = Mat::zeros(ts.len(), keep.len());
    for i in 0..ts.len() {
        for (dst, &src) in keep.iter().enumerate() {
            values.set(i, dst, ts.values.get(i, src));
        }
    }

    Ok(WindowedDataset {
        values,
        anchors,
        lookback,
        horizon,
        input_channels: input_channels.iter().map(|&c| remap(c)).collect(),
        target_channels: target_channels.iter().map(|&c| remap(c)).collect(),
        split,
    })
}
