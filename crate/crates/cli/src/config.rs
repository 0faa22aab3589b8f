use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{invalid, CliError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct VersionProbe {
    schema_version: Option<u32>,
}

/// A parsed config and the directory its relative paths refer to.
pub struct Loaded<T> {
    pub value: T,
    pub base: PathBuf,
}

impl<T> Loaded<T> {
    pub fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }
}

pub fn parse_config<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let probe: VersionProbe =
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed config: {e}")))?;
    match probe.schema_version {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(invalid(format!("unsupported schemaVersion {v} (expected {SCHEMA_VERSION})"))),
        None => return Err(invalid("config is missing schemaVersion")),
    }
    serde_json::from_str(text).map_err(|e| invalid(format!("invalid config: {e}")))
}

pub fn load<T: DeserializeOwned>(path: Option<&Path>) -> Result<Loaded<T>, CliError> {
    let path = path.ok_or_else(|| invalid("this command needs --config"))?;
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { value: parse_config(&text)?, base })
}

pub fn matrix(rows: &[Vec<f64>], name: &str) -> Result<DMatrix<f64>, CliError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("{name} must be a non-empty square matrix")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}
