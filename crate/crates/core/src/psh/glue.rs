//! Gluing a local potential into a global one with the smoothed maximum.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::cone_check::uniform_margin;
use super::potential::Potential;
use super::regmax::regularized_max_pair;
use super::{Complex64, PshError};
use crate::kernel::CoefficientSet;

const MARGIN_TOL: f64 = 1e-8;

/// Values, real gradients and complex Hessians of a potential on a point list.
#[derive(Debug, Clone)]
pub struct GluePiece {
    pub values: Vec<f64>,
    pub gradients: Vec<Vec<f64>>,
    pub hessians: Vec<DMatrix<Complex64>>,
}

impl GluePiece {
    pub fn sample(potential: &dyn Potential, points: &[Vec<f64>]) -> Self {
        Self {
            values: points.iter().map(|p| potential.value(p)).collect(),
            gradients: points.iter().map(|p| potential.gradient(p)).collect(),
            hessians: points.iter().map(|p| potential.complex_hessian(p)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.values.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GlueKind {
    /// Outside the region: the global potential, unchanged.
    Global,
    /// Inside the region, the global potential wins by at least eta.
    GlobalWins,
    /// Inside the region, the shifted local potential wins by at least eta.
    Local,
    Blend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GlueConflict {
    pub index: usize,
    pub point: Vec<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GlueReport {
    pub eta: f64,
    pub offset: f64,
    pub values: Vec<f64>,
    pub kinds: Vec<GlueKind>,
    #[serde(skip)]
    pub hessians: Vec<DMatrix<Complex64>>,
    /// Cone margin of the glued form (`None` where it is not positive).
    pub margins: Vec<Option<f64>>,
    pub blend_points: usize,
    pub min_margin: Option<f64>,
    /// Smallest margin of either input over the blend points.
    pub min_input_margin_on_blend: Option<f64>,
    pub conflicts: Vec<GlueConflict>,
    pub accepted: bool,
}

/// Everything `glue_potentials` needs besides the two pieces.
#[derive(Debug, Clone)]
pub struct GlueSetup<'a> {
    pub points: &'a [Vec<f64>],
    /// Points of the region `U` where the local potential is defined.
    pub in_region: &'a [bool],
    /// Points of `U` near its edge, where the local potential must lose.
    pub edge: &'a [bool],
    pub coeffs: &'a CoefficientSet,
    pub chi: &'a DMatrix<f64>,
}

/// `d f = (f_x - i f_y) / 2` per complex coordinate.
fn complex_gradient(g: &[f64]) -> DVector<Complex64> {
    DVector::from_fn(g.len() / 2, |j, _| Complex64::new(0.5 * g[2 * j], -0.5 * g[2 * j + 1]))
}

/// Pointwise `max_eta(local + offset, global)` on `U`, the global potential
/// elsewhere. The glued Hessian is `H' A + (1 - H') B + H'' d(a-b) dbar(a-b)`.
pub fn glue_potentials(
    local: &GluePiece,
    global: &GluePiece,
    eta: f64,
    offset: f64,
    setup: &GlueSetup<'_>,
) -> Result<GlueReport, PshError> {
    let m = setup.points.len();
    if local.len() != m || global.len() != m || setup.in_region.len() != m || setup.edge.len() != m {
        return Err(PshError::Domain("pieces and masks must cover the same points".into()));
    }
    if !offset.is_finite() {
        return Err(PshError::Domain("offset must be finite".into()));
    }
    let chi = setup.chi;
    let mut values = Vec::with_capacity(m);
    let mut kinds = Vec::with_capacity(m);
    let mut hessians = Vec::with_capacity(m);
    let mut margins = Vec::with_capacity(m);
    let mut conflicts = Vec::new();
    let mut min_input: Option<f64> = None;
    for i in 0..m {
        let b = global.values[i];
        if !setup.in_region[i] {
            values.push(b);
            kinds.push(GlueKind::Global);
            hessians.push(global.hessians[i].clone());
        } else {
            let a = local.values[i] + offset;
            let (v, h1, h2) = regularized_max_pair(a, b, eta)?;
            let kind = if a - b >= eta {
                GlueKind::Local
            } else if b - a >= eta {
                GlueKind::GlobalWins
            } else {
                GlueKind::Blend
            };
            if setup.edge[i] && a - b > -eta {
                conflicts.push(GlueConflict {
                    index: i,
                    point: setup.points[i].clone(),
                    reason: format!("local potential does not lose at the edge of its region (gap {:e})", a - b),
                });
            }
            let h = match kind {
                GlueKind::Local => local.hessians[i].clone(),
                GlueKind::GlobalWins | GlueKind::Global => global.hessians[i].clone(),
                GlueKind::Blend => {
                    let diff: Vec<f64> = local.gradients[i].iter().zip(&global.gradients[i]).map(|(p, q)| p - q).collect();
                    let dv = complex_gradient(&diff);
                    &local.hessians[i] * Complex64::new(h1, 0.0)
                        + &global.hessians[i] * Complex64::new(1.0 - h1, 0.0)
                        + &dv * dv.adjoint() * Complex64::new(h2, 0.0)
                }
            };
            if kind == GlueKind::Blend {
                let ma = uniform_margin(setup.coeffs, &local.hessians[i], chi, 0.0)?;
                let mb = uniform_margin(setup.coeffs, &global.hessians[i], chi, 0.0)?;
                match (ma, mb) {
                    (Some(x), Some(y)) => {
                        let floor = x.min(y);
                        min_input = Some(min_input.map_or(floor, |v| v.min(floor)));
                    }
                    _ => conflicts.push(GlueConflict {
                        index: i,
                        point: setup.points[i].clone(),
                        reason: "an input violates the cone condition where the two are blended".into(),
                    }),
                }
            }
            values.push(if kind == GlueKind::Local { a } else if kind == GlueKind::GlobalWins { b } else { v });
            kinds.push(kind);
            hessians.push(h);
        }
        margins.push(uniform_margin(setup.coeffs, hessians.last().expect("pushed"), chi, 0.0)?);
    }
    let blend_points = kinds.iter().filter(|k| **k == GlueKind::Blend).count();
    let min_margin = if margins.iter().any(Option::is_none) {
        None
    } else {
        margins.iter().flatten().copied().reduce(f64::min)
    };
    if let Some(floor) = min_input {
        for (i, k) in kinds.iter().enumerate() {
            if *k == GlueKind::Blend && margins[i].is_none_or(|g| g < floor - MARGIN_TOL) {
                conflicts.push(GlueConflict {
                    index: i,
                    point: setup.points[i].clone(),
                    reason: "glued margin falls below the inputs' margin".into(),
                });
            }
        }
    }
    let accepted = conflicts.is_empty();
    Ok(GlueReport {
        eta,
        offset,
        values,
        kinds,
        hessians,
        margins,
        blend_points,
        min_margin,
        min_input_margin_on_blend: min_input,
        conflicts,
        accepted,
    })
}
