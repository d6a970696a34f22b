//! Run manifests: config hash plus input/output checksums.
//!
//! Manifests contain no timestamps, so byte-identical runs produce
//! byte-identical manifests.

use std::io::Read;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;

pub fn sha256_bytes(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex(&h.finalize())
}

pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    let mut f = std::fs::File::open(path)?;
    let mut h = Sha256::new();
    let mut buf = [0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex(&h.finalize()))
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Extracts the string value of `"key": "..."` from flat JSON emitted by
/// this crate. Not a general parser.
pub fn json_str_field(doc: &str, key: &str) -> Option<String> {
    let needle = format!("\"{key}\":");
    let at = doc.find(&needle)? + needle.len();
    let rest = doc[at..].trim_start();
    let rest = rest.strip_prefix('"')?;
    let end = rest.find('"')?;
    Some(rest[..end].to_string())
}

/// Writes `manifest.json` describing one command run.
pub fn write_manifest(
    out_dir: &Path,
    command: &str,
    config_text: &str,
    inputs: &[(PathBuf, String)],
    outputs: &[PathBuf],
) -> Result<(), CliError> {
    let mut doc = String::new();
    doc.push_str("{\n");
    doc.push_str(&format!("  \"command\": \"{}\",\n", json_escape(command)));
    doc.push_str(&format!(
        "  \"config_sha256\": \"{}\",\n",
        sha256_bytes(config_text.as_bytes())
    ));
    doc.push_str("  \"inputs\": [\n");
    for (i, (path, sha)) in inputs.iter().enumerate() {
        doc.push_str(&format!(
            "    {{\"path\": \"{}\", \"sha256\": \"{}\"}}{}\n",
            json_escape(&path.display().to_string()),
            sha,
            if i + 1 < inputs.len() { "," } else { "" }
        ));
    }
    doc.push_str("  ],\n");
    doc.push_str("  \"outputs\": [\n");
    for (i, path) in outputs.iter().enumerate() {
        doc.push_str(&format!(
            "    \"{}\"{}\n",
            json_escape(&path.display().to_string()),
            if i + 1 < outputs.len() { "," } else { "" }
        ));
    }
    doc.push_str("  ]\n}\n");
    let path = out_dir.join("manifest.json");
    std::fs::write(&path, doc).map_err(|e| CliError::io("writing manifest", e))
}
