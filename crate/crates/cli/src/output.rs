use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{invalid, CliError};

/// What a command produced: the report, an optional CSV table, extra files
/// for the output directory, and the exit code for a successful run.
pub struct Output {
    pub report: Value,
    pub csv: Option<String>,
    pub files: Vec<(String, Vec<u8>)>,
    pub code: i32,
}

impl Output {
    pub fn new(report: &impl Serialize) -> Result<Self, CliError> {
        let report = serde_json::to_value(report).map_err(|e| CliError::Compute(format!("cannot serialize report: {e}")))?;
        Ok(Self { report, csv: None, files: Vec::new(), code: 0 })
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_file(mut self, name: &str, bytes: Vec<u8>) -> Self {
        self.files.push((name.to_string(), bytes));
        self
    }

    pub fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

pub fn report_text(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("json values serialize");
    s.push('\n');
    s
}

pub fn write_all(dir: &Path, out: &Output, timings: &Value) -> Result<(), CliError> {
    let io = |e: std::io::Error| invalid(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("report.json"), report_text(&out.report)).map_err(io)?;
    fs::write(dir.join("timings.json"), report_text(timings)).map_err(io)?;
    if let Some(csv) = &out.csv {
        fs::write(dir.join("report.csv"), csv).map_err(io)?;
    }
    for (name, bytes) in &out.files {
        fs::write(dir.join(name), bytes).map_err(io)?;
    }
    Ok(())
}
