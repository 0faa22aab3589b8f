//! Lelong numbers at level delta:
//! `nu(x, delta) = (sup_{B(x,r/4)} phi - sup_{B(x,delta)} phi) / (log(r/4) - log delta)`.

use serde::{Deserialize, Serialize};

use super::mollify::check_ball;
use super::potential::Potential;
use super::quadrature::{sphere_rule, Resolution};
use super::PshError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SupSampling {
    pub radial: usize,
    /// Angles per circle for `n = 1`; for larger `n`, angles per complex
    /// coordinate of the direction grid.
    pub angular: usize,
}

impl Default for SupSampling {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LelongLevelResult {
    pub r: f64,
    pub deltas: Vec<f64>,
    pub nu_at_delta: Vec<f64>,
    /// Estimated `sup_{B(x,delta)} phi` per delta.
    pub sup_at_delta: Vec<f64>,
    /// Estimated `sup_{B(x,r/4)} phi`.
    pub sup_outer: f64,
    /// Value at the smallest delta.
    pub extrapolated: f64,
}

fn directions(dim: usize, sampling: SupSampling) -> Vec<Vec<f64>> {
    let n = dim / 2;
    if n == 1 {
        let m = sampling.angular;
        return (0..m)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
    }
    let per = (sampling.angular / 8).max(4);
    sphere_rule(
        n,
        Resolution {
            radial: 1,
            simplex: per,
            angular: per,
        },
    )
    .into_iter()
    .map(|(p, _)| p)
    .collect()
}

/// Lower estimate of `sup_{B(x, radius)} phi`: dense sampling plus the point
/// where the log part attains its supremum.
pub fn ball_sup(potential: &dyn Potential, x: &[f64], radius: f64, sampling: SupSampling) -> f64 {
    let dim = x.len();
    let mut best = f64::NEG_INFINITY;
    let mut p = vec![0.0; dim];
    let dirs = directions(dim, sampling);
    for j in 1..=sampling.radial {
        let s = radius * j as f64 / sampling.radial as f64;
        for d in &dirs {
            for a in 0..dim {
                p[a] = x[a] + s * d[a];
            }
            best = best.max(potential.value(&p));
        }
    }
    best = best.max(potential.value(x));
    if let Some((gamma, center)) = potential.log_singularity() {
        if gamma > 0.0 {
            let dist = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            for a in 0..dim {
                p[a] = if dist > 0.0 {
                    x[a] + radius * (x[a] - center[a]) / dist
                } else if a == 0 {
                    x[a] + radius
                } else {
                    x[a]
                };
            }
            best = best.max(potential.value(&p));
        }
    }
    best
}

pub fn lelong_level(potential: &dyn Potential, x: &[f64], deltas: &[f64], r: f64) -> Result<LelongLevelResult, PshError> {
    lelong_level_with(potential, x, deltas, r, SupSampling::default())
}

pub fn lelong_level_with(
    potential: &dyn Potential,
    x: &[f64],
    deltas: &[f64],
    r: f64,
    sampling: SupSampling,
) -> Result<LelongLevelResult, PshError> {
    if deltas.is_empty() {
        return Err(PshError::Empty("delta list is empty".into()));
    }
    if !(r > 0.0) {
        return Err(PshError::Domain("r must be positive".into()));
    }
    let outer = 0.25 * r;
    if let Some(d) = deltas.iter().find(|d| !(**d > 0.0 && **d < outer)) {
        return Err(PshError::Domain(format!("delta {d} is not in (0, r/4)")));
    }
    check_ball(potential, x, outer)?;
    let sup_outer = ball_sup(potential, x, outer, sampling);
    let mut sup_at_delta = Vec::with_capacity(deltas.len());
    let mut nu_at_delta = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let s = ball_sup(potential, x, d, sampling);
        sup_at_delta.push(s);
        nu_at_delta.push((sup_outer - s) / (outer.ln() - d.ln()));
    }
    let smallest = deltas
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("non-empty");
    Ok(LelongLevelResult {
        r,
        deltas: deltas.to_vec(),
        extrapolated: nu_at_delta[smallest],
        nu_at_delta,
        sup_at_delta,
        sup_outer,
    })
}
