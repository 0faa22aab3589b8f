//! JSON input for the toric checker.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::criterion::ClassPolytopePair;
use super::polytope::RationalPolytope;
use super::rational::{parse_rational, Q};
use super::ToricError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetName {
    pub normal: Vec<i64>,
    pub name: String,
}

/// Vertex lists of the two moment polytopes, with every coordinate and
/// coefficient written as a rational string such as `"9/10"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ToricConfig {
    pub schema_version: u32,
    pub omega: Vec<Vec<String>>,
    pub chi: Vec<Vec<String>>,
    /// `c_1, ..., c_{n-1}`.
    pub coefficients: Vec<String>,
    #[serde(default)]
    pub facet_names: Vec<FacetName>,
}

fn parse_points(points: &[Vec<String>]) -> Result<Vec<Vec<Q>>, ToricError> {
    points
        .iter()
        .map(|p| p.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

impl ToricConfig {
    pub fn from_json(text: &str) -> Result<Self, ToricError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| ToricError::Parse(e.to_string()))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(ToricError::Parse(format!(
                "unsupported schemaVersion {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn pair(&self) -> Result<ClassPolytopePair, ToricError> {
        let omega = RationalPolytope::from_points(&parse_points(&self.omega)?)?;
        let chi = RationalPolytope::from_points(&parse_points(&self.chi)?)?;
        let names: BTreeMap<Vec<BigInt>, String> = self
            .facet_names
            .iter()
            .map(|f| (f.normal.iter().map(|&x| BigInt::from(x)).collect(), f.name.clone()))
            .collect();
        ClassPolytopePair::new(omega, chi)?.with_facet_names(&names)
    }

    pub fn coefficients(&self) -> Result<Vec<Q>, ToricError> {
        self.coefficients.iter().map(|s| parse_rational(s)).collect()
    }
}
