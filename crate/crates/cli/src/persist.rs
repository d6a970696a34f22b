//! Model container files.
//!
//! Layout of a `.rmmf` file, integers and floats little-endian:
//!
//! ```text
//! magic         4 bytes  "RMMF"
//! version       u32      1
//! meta length   u64      then UTF-8 `key = value` lines (task metadata)
//! sections, each:
//!   tag         4 bytes
//!   rows, cols  u64, u64
//!   payload     rows*cols x f64
//! end tag       "ENDC"
//! ```
//!
//! Section tags: `MOTF` motif matrix, `EIGV` eigenvalues, `OPRA` state
//! operator, `WGHT` readout weights, `ICPT` intercept, `NMEA`/`NSTD`
//! normalization statistics. Floats are stored bit-exact, so a reloaded
//! model reproduces predictions bit-identically.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use rmm_core::forecast::{FeatureExtractor, FeatureKind, ForecastModel, LinearReadout, ModelMeta};
use rmm_core::motif::MotifBasis;
use rmm_core::scr::{ReservoirSpec, StateOperator};
use rmm_core::series::NormStats;
use rmm_core::Mat;

use crate::config::format_f64;
use crate::error::CliError;

const MAGIC: &[u8; 4] = b"RMMF";
const VERSION: u32 = 1;

fn push_section(out: &mut Vec<u8>, tag: &[u8; 4], rows: usize, cols: usize, data: &[f64]) {
    debug_assert_eq!(rows * cols, data.len());
    out.extend_from_slice(tag);
    out.extend_from_slice(&(rows as u64).to_le_bytes());
    out.extend_from_slice(&(cols as u64).to_le_bytes());
    for v in data {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

pub fn save_model(path: &Path, model: &ForecastModel) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| CliError::io("creating model dir", e))?;
    }
    let meta = &model.meta;
    let mut kv: Vec<(String, String)> = vec![
        ("dataset".into(), meta.dataset.clone()),
        ("task".into(), meta.task.clone()),
        ("variant".into(), model.extractor.variant_label().into()),
        ("horizon".into(), meta.horizon.to_string()),
        ("lookback".into(), meta.lookback.to_string()),
        ("reservoir_size".into(), meta.reservoir_size.to_string()),
        ("cycle_weight".into(), format_f64(meta.cycle_weight)),
        ("input_weight".into(), format_f64(meta.input_weight)),
        ("ridge_lambda".into(), format_f64(meta.ridge_lambda)),
        ("output_channels".into(), model.output_channels.to_string()),
        (
            "input_channels".into(),
            model.extractor.input_channels().to_string(),
        ),
        ("min_norm".into(), model.readout.min_norm.to_string()),
        (
            "readout_ridge_lambda".into(),
            format_f64(model.readout.ridge_lambda),
        ),
    ];
    if let Some(basis) = model.extractor.motif_basis() {
        kv.push(("rank_tol".into(), format_f64(basis.rank_tol())));
    }
    let meta_text: String = kv.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();

    let mut out: Vec<u8> = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(meta_text.len() as u64).to_le_bytes());
    out.extend_from_slice(meta_text.as_bytes());

    match model.extractor.kind() {
        FeatureKind::MotifProjection(basis) => {
            let m = basis.motifs();
            push_section(&mut out, b"MOTF", m.rows(), m.cols(), m.as_slice());
            push_section(&mut out, b"EIGV", 1, basis.count(), basis.eigenvalues());
        }
        FeatureKind::ReservoirState(op) => {
            let m = op.matrix();
            push_section(&mut out, b"OPRA", m.rows(), m.cols(), m.as_slice());
        }
    }
    let w = &model.readout.weights;
    push_section(&mut out, b"WGHT", w.rows(), w.cols(), w.as_slice());
    push_section(
        &mut out,
        b"ICPT",
        1,
        model.readout.intercept.len(),
        &model.readout.intercept,
    );
    if let Some(stats) = &model.norm_stats {
        push_section(&mut out, b"NMEA", 1, stats.mean.len(), &stats.mean);
        push_section(&mut out, b"NSTD", 1, stats.std.len(), &stats.std);
    }
    out.extend_from_slice(b"ENDC");
    std::fs::write(path, out).map_err(|e| CliError::io("writing model file", e))
}

pub fn load_model(path: &Path) -> Result<ForecastModel, CliError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| CliError::io("reading model file", e))?;
    let bad = |m: &str| CliError::Data(format!("{}: {m}", path.display()));
    if bytes.len() < 16 || &bytes[..4] != MAGIC {
        return Err(bad("not a model file (bad magic)"));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(bad(&format!("unsupported model version {version}")));
    }
    let meta_len = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    if bytes.len() < 16 + meta_len {
        return Err(bad("truncated metadata"));
    }
    let meta_text =
        std::str::from_utf8(&bytes[16..16 + meta_len]).map_err(|_| bad("metadata not UTF-8"))?;
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    for line in meta_text.lines() {
        if let Some((k, v)) = line.split_once('=') {
            kv.insert(k.trim(), v.trim());
        }
    }
    let get = |k: &str| {
        kv.get(k)
            .copied()
            .ok_or_else(|| bad(&format!("missing metadata key '{k}'")))
    };
    let parse_usize = |k: &str| -> Result<usize, CliError> {
        get(k)?
            .parse()
            .map_err(|_| bad(&format!("bad integer for '{k}'")))
    };
    let parse_f64 = |k: &str| -> Result<f64, CliError> {
        get(k)?
            .parse()
            .map_err(|_| bad(&format!("bad float for '{k}'")))
    };

    let mut at = 16 + meta_len;
    let mut sections: BTreeMap<[u8; 4], Mat> = BTreeMap::new();
    loop {
        if at + 4 > bytes.len() {
            return Err(bad("missing end tag"));
        }
        let tag: [u8; 4] = bytes[at..at + 4].try_into().unwrap();
        at += 4;
        if &tag == b"ENDC" {
            break;
        }
        if at + 16 > bytes.len() {
            return Err(bad("truncated section header"));
        }
        let rows = u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap()) as usize;
        let cols = u64::from_le_bytes(bytes[at + 8..at + 16].try_into().unwrap()) as usize;
        at += 16;
        let need = rows * cols * 8;
        if at + need > bytes.len() {
            return Err(bad("truncated section payload"));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for chunk in bytes[at..at + need].chunks_exact(8) {
            data.push(f64::from_le_bytes(chunk.try_into().unwrap()));
        }
        at += need;
        sections.insert(tag, Mat::from_vec(rows, cols, data));
    }

    let variant = get("variant")?;
    let lookback = parse_usize("lookback")?;
    let reservoir_size = parse_usize("reservoir_size")?;
    let cycle_weight = parse_f64("cycle_weight")?;
    let input_weight = parse_f64("input_weight")?;
    let spec = ReservoirSpec::new(reservoir_size, cycle_weight, input_weight)
        .map_err(|e| bad(&e.to_string()))?;

    let kind = match variant {
        "rmm" => {
            let motifs = sections
                .remove(b"MOTF")
                .ok_or_else(|| bad("missing MOTF section"))?;
            let eig = sections
                .remove(b"EIGV")
                .ok_or_else(|| bad("missing EIGV section"))?;
            let rank_tol = parse_f64("rank_tol")?;
            let basis =
                MotifBasis::from_parts(motifs, eig.as_slice().to_vec(), lookback, spec, rank_tol)
                    .map_err(|e| bad(&e.to_string()))?;
            FeatureKind::MotifProjection(basis)
        }
        "lrc" => {
            let op = sections
                .remove(b"OPRA")
                .ok_or_else(|| bad("missing OPRA section"))?;
            FeatureKind::ReservoirState(
                StateOperator::from_parts(op, lookback).map_err(|e| bad(&e.to_string()))?,
            )
        }
        other => return Err(bad(&format!("unknown variant '{other}'"))),
    };

    let weights = sections
        .remove(b"WGHT")
        .ok_or_else(|| bad("missing WGHT section"))?;
    let intercept = sections
        .remove(b"ICPT")
        .ok_or_else(|| bad("missing ICPT section"))?
        .as_slice()
        .to_vec();
    let norm_stats = match (sections.remove(b"NMEA"), sections.remove(b"NSTD")) {
        (Some(m), Some(s)) => Some(NormStats {
            mean: m.as_slice().to_vec(),
            std: s.as_slice().to_vec(),
        }),
        _ => None,
    };

    let horizon = parse_usize("horizon")?;
    let output_channels = parse_usize("output_channels")?;
    let input_channels = parse_usize("input_channels")?;
    let model = ForecastModel {
        extractor: FeatureExtractor::new(kind, input_channels),
        readout: LinearReadout {
            weights,
            intercept,
            ridge_lambda: parse_f64("readout_ridge_lambda")?,
            min_norm: get("min_norm")? == "true",
        },
        horizon,
        output_channels,
        norm_stats,
        meta: ModelMeta {
            dataset: get("dataset")?.to_string(),
            task: get("task")?.to_string(),
            horizon,
            lookback,
            reservoir_size,
            cycle_weight,
            input_weight,
            ridge_lambda: parse_f64("ridge_lambda")?,
        },
    };
    Ok(model)
}
