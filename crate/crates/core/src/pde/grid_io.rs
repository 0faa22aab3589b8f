//! Grid files: one JSON header line, a newline, then the values as raw
//! little-endian binary64 in row-major order.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridIoError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad grid file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GridHeader {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub grid_shape: Vec<usize>,
    pub byte_order: String,
    pub dtype: String,
}

impl GridHeader {
    pub fn new(shape: &[usize]) -> Self {
        Self {
            format: "gma-grid".into(),
            version: 1,
            n: shape.len(),
            grid_shape: shape.to_vec(),
            byte_order: "little".into(),
            dtype: "f64".into(),
        }
    }
}

pub fn encode(shape: &[usize], values: &[f64]) -> Result<Vec<u8>, GridIoError> {
    if shape.iter().product::<usize>() != values.len() {
        return Err(GridIoError::Format("value count does not match shape".into()));
    }
    let mut out = serde_json::to_vec(&GridHeader::new(shape))
        .map_err(|e| GridIoError::Format(e.to_string()))?;
    out.push(b'\n');
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<(Vec<usize>, Vec<f64>), GridIoError> {
    let newline = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| GridIoError::Format("missing header line".into()))?;
    let header: GridHeader = serde_json::from_slice(&bytes[..newline])
        .map_err(|e| GridIoError::Format(format!("header: {e}")))?;
    if header.format != "gma-grid" || header.version != 1 {
        return Err(GridIoError::Format("unsupported format or version".into()));
    }
    if header.byte_order != "little" || header.dtype != "f64" {
        return Err(GridIoError::Format("only little-endian f64 is supported".into()));
    }
    if header.n != header.grid_shape.len() {
        return Err(GridIoError::Format("n does not match gridShape".into()));
    }
    let body = &bytes[newline + 1..];
    let count: usize = header.grid_shape.iter().product();
    if body.len() != count * 8 {
        return Err(GridIoError::Format(format!(
            "expected {} bytes of data, found {}",
            count * 8,
            body.len()
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect();
    Ok((header.grid_shape, values))
}

pub fn write_grid(path: &Path, shape: &[usize], values: &[f64]) -> Result<(), GridIoError> {
    fs::write(path, encode(shape, values)?)?;
    Ok(())
}

pub fn read_grid(path: &Path) -> Result<(Vec<usize>, Vec<f64>), GridIoError> {
    decode(&fs::read(path)?)
}

/// CSV with one row per grid point: coordinates `x0..`, then `value`.
pub fn to_csv(shape: &[usize], values: &[f64]) -> String {
    let n = shape.len();
    let mut out = String::new();
    let cols: Vec<String> = (0..n).map(|a| format!("x{a}")).collect();
    out.push_str(&cols.join(","));
    out.push_str(",value\n");
    for (i, v) in values.iter().enumerate() {
        let mut rest = i;
        let mut coords = vec![0.0; n];
        for a in (0..n).rev() {
            coords[a] = (rest % shape[a]) as f64 / shape[a] as f64;
            rest /= shape[a];
        }
        for c in coords {
            out.push_str(&format!("{c},"));
        }
        out.push_str(&format!("{v:e}\n"));
    }
    out
}

pub fn write_csv(path: &Path, shape: &[usize], values: &[f64]) -> Result<(), GridIoError> {
    let mut file = fs::File::create(path)?;
    file.write_all(to_csv(shape, values).as_bytes())?;
    Ok(())
}
