use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::TorusGeometry;
use super::PdeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WaveKind {
    Cos,
    Sin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TrigTerm {
    pub amplitude: f64,
    /// Integer wave vector `k`; the term is `amplitude * cos(2 pi k.x)` (or sin).
    pub wave: Vec<i64>,
    pub kind: WaveKind,
}

/// `constant + sum of amplitude * cos/sin(2 pi k.x)` on the torus.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TrigPolynomial {
    #[serde(default)]
    pub constant: f64,
    #[serde(default)]
    pub terms: Vec<TrigTerm>,
}

impl TrigPolynomial {
    pub fn constant(value: f64) -> Self {
        Self {
            constant: value,
            terms: Vec::new(),
        }
    }

    pub fn with_term(mut self, amplitude: f64, wave: Vec<i64>, kind: WaveKind) -> Self {
        self.terms.push(TrigTerm { amplitude, wave, kind });
        self
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        let mut v = self.constant;
        for term in &self.terms {
            let phase: f64 = 2.0 * PI * term.wave.iter().zip(x).map(|(k, xi)| *k as f64 * xi).sum::<f64>();
            v += term.amplitude
                * match term.kind {
                    WaveKind::Cos => phase.cos(),
                    WaveKind::Sin => phase.sin(),
                };
        }
        v
    }

    pub fn sample(&self, geom: &TorusGeometry) -> Result<Vec<f64>, PdeError> {
        if let Some(t) = self.terms.iter().find(|t| t.wave.len() != geom.n()) {
            return Err(PdeError::Data(format!(
                "wave vector {:?} does not match torus dimension {}",
                t.wave,
                geom.n()
            )));
        }
        Ok((0..geom.len()).map(|i| self.evaluate(&geom.point(i))).collect())
    }
}
