use serde::{Deserialize, Serialize};

use gma_core::kernel::selfcheck::{cone_property_suite, identity_suite, SuiteReport};
use gma_core::kernel::{compute_fm, cone_margin, CoefficientSet};

use crate::config::{parse_config, Loaded};
use crate::error::CliError;
use crate::output::Output;

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConeConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    pub n: usize,
    pub c: Vec<f64>,
    pub lambda: Vec<f64>,
    #[serde(default = "one")]
    pub t: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FmConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    pub n: usize,
    pub c: Vec<f64>,
    /// `int Omega_0^n / int chi^n`.
    pub ratio: f64,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IdentitiesConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_cone_samples")]
    pub cone_samples: usize,
}

fn default_samples() -> usize {
    1000
}

fn default_cone_samples() -> usize {
    500
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct IdentitiesReport {
    identities: SuiteReport,
    cone_properties: SuiteReport,
    passed: bool,
}

pub fn cone(cfg: &Loaded<ConeConfig>) -> Result<Output, CliError> {
    let c = &cfg.value;
    let coeffs = CoefficientSet::new(c.n, c.c.clone())?;
    let report = cone_margin(&coeffs, c.t, &c.lambda)?;
    let mut csv = String::from("index,load\n");
    for (i, l) in report.per_index_load.iter().enumerate() {
        csv.push_str(&format!("{i},{l}\n"));
    }
    Ok(Output::new(&report)?.with_csv(csv))
}

pub fn fm(cfg: &Loaded<FmConfig>) -> Result<Output, CliError> {
    let c = &cfg.value;
    let coeffs = CoefficientSet::new(c.n, c.c.clone())?;
    Output::new(&compute_fm(&coeffs, c.ratio)?)
}

pub fn identities(cfg: Option<&Loaded<IdentitiesConfig>>, seed: u64) -> Result<Output, CliError> {
    let defaults;
    let c = match cfg {
        Some(l) => &l.value,
        None => {
            defaults = parse_config::<IdentitiesConfig>(r#"{"schemaVersion": 1}"#)?;
            &defaults
        }
    };
    let identities = identity_suite(seed, c.samples);
    let cone_properties = cone_property_suite(seed, c.cone_samples);
    let passed = identities.passed && cone_properties.passed;
    let report = IdentitiesReport { identities, cone_properties, passed };
    Ok(Output::new(&report)?.with_code(if passed { 0 } else { 1 }))
}
