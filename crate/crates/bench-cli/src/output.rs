//! Writes artifacts and the run manifest.

use crate::error::BenchError;
use crate::experiments::{Artifact, RunOutput};
use crate::config::Validated;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

pub const MANIFEST_NAME: &str = "manifest.json";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> BenchError + '_ {
    move |source| BenchError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Manifest describing a run. It contains no timestamps or host details,
/// so identical inputs give identical manifests.
pub fn manifest(v: &Validated, preset: Option<&str>, out: &RunOutput) -> Value {
    let outputs: serde_json::Map<String, Value> = out
        .artifacts
        .iter()
        .map(|a| (a.name.clone(), json!(sha256_hex(a.contents.as_bytes()))))
        .collect();
    let mut config = v.config.clone();
    config.output_dir = None;
    json!({
        "library": { "name": "mcwave", "version": env!("CARGO_PKG_VERSION") },
        "preset": preset,
        "experiment": v.config.kind.as_str(),
        "config": serde_json::to_value(&config).expect("configurations serialize to JSON"),
        "config_toml": config.to_toml(),
        "derived": out.derived,
        "outputs": outputs,
    })
}

/// Writes every artifact plus `manifest.json` into `dir` and returns the paths written.
pub fn write_all(dir: &Path, artifacts: &[Artifact], manifest: &Value) -> Result<Vec<PathBuf>, BenchError> {
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for a in artifacts {
        let path = dir.join(&a.name);
        fs::write(&path, a.contents.as_bytes()).map_err(io(&path))?;
        written.push(path);
    }
    let path = dir.join(MANIFEST_NAME);
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(&path, text).map_err(io(&path))?;
    written.push(path);
    Ok(written)
}
