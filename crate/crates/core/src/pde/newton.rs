use serde::{Deserialize, Serialize};

use super::continuity::StageRecord;
use super::field::{Evaluator, PointData};
use super::geometry::{PotentialField, TorusGeometry};
use super::gmres::gmres;
use super::PdeError;
use crate::kernel::CoefficientSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct NewtonOptions {
    /// Stop when the sup norm of the residual is at most this.
    pub tol: f64,
    pub max_iter: usize,
    pub linear_tol: f64,
    pub restart: usize,
    pub max_linear_iterations: usize,
    /// Linear solves ending above this relative residual are a stall.
    pub stall_tol: f64,
    pub min_damping: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 50,
            linear_tol: 1e-12,
            restart: 50,
            max_linear_iterations: 1000,
            stall_tol: 1e-6,
            min_damping: 2f64.powi(-20),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NewtonStep {
    pub iteration: usize,
    /// Residual sup norm after the step.
    pub residual: f64,
    pub damping: f64,
    pub linear_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveState {
    #[serde(skip)]
    pub phi: PotentialField,
    pub t: f64,
    pub slack: f64,
    pub residual_sup: f64,
    pub min_cone_margin: f64,
    pub newton_trace: Vec<NewtonStep>,
    /// Accepted continuity stages; empty for a single Newton solve.
    pub stages: Vec<StageRecord>,
    pub c0: f64,
    pub warnings: Vec<String>,
}

impl Default for PotentialField {
    fn default() -> Self {
        Self {
            shape: Vec::new(),
            values: Vec::new(),
        }
    }
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub(crate) fn newton_core(
    ev: &Evaluator,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
    t: f64,
    initial: &PotentialField,
    initial_slack: f64,
    options: &NewtonOptions,
) -> Result<SolveState, PdeError> {
    let size = ev.geom.len();
    let mut phi = initial.clone().mean_zero();
    let mut slack = initial_slack;
    let mut data: Vec<PointData> = ev.points(&phi)?;
    let mut r = ev.residual_from(&data, coeffs, f_grid, t, slack);
    let mut rs = sup(&r);
    let mut trace = Vec::new();

    let mut iteration = 0;
    while rs > options.tol {
        if iteration == options.max_iter {
            return Err(PdeError::MaxIterExceeded {
                iterations: iteration,
                residual: rs,
            });
        }
        iteration += 1;
        let op = ev.linearize_from(&data, coeffs, t)?;
        let mut rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        rhs.push(0.0);
        let out = gmres(
            |v| op.apply_bordered(v),
            |v| op.precondition(v),
            &rhs,
            options.restart,
            options.max_linear_iterations,
            options.linear_tol,
        );
        if out.relative_residual > options.stall_tol {
            return Err(PdeError::LinearSolveStall {
                relative_residual: out.relative_residual,
            });
        }
        let mut step = PotentialField {
            shape: phi.shape.clone(),
            values: out.x[..size].to_vec(),
        };
        step.project_mean_zero();
        let dslack = out.x[size];

        let mut alpha = 1.0;
        let mut last_breach: Option<PdeError> = None;
        let accepted = loop {
            if alpha < options.min_damping {
                break None;
            }
            let mut candidate = phi.clone();
            for (c, d) in candidate.values.iter_mut().zip(&step.values) {
                *c += alpha * d;
            }
            candidate.project_mean_zero();
            let cand_slack = slack + alpha * dslack;
            match ev.points(&candidate) {
                Err(e @ PdeError::ConeBreach { .. }) => last_breach = Some(e),
                Err(e) => return Err(e),
                Ok(d) => {
                    let worst = ev.worst_margin(&ev.margins_from(&d, coeffs, t));
                    if worst.min_margin <= 0.0 {
                        last_breach = Some(PdeError::ConeBreach {
                            index: worst.index,
                            point: worst.point,
                            margin: worst.min_margin,
                            reason: "every damped step leaves the cone".into(),
                        });
                    } else {
                        let r_new = ev.residual_from(&d, coeffs, f_grid, t, cand_slack);
                        let rs_new = sup(&r_new);
                        if rs_new <= (1.0 - 1e-4 * alpha) * rs {
                            break Some((candidate, cand_slack, d, r_new, rs_new));
                        }
                        last_breach = None;
                    }
                }
            }
            alpha *= 0.5;
        };
        match accepted {
            Some((p, s, d, r_new, rs_new)) => {
                phi = p;
                slack = s;
                data = d;
                r = r_new;
                rs = rs_new;
                trace.push(NewtonStep {
                    iteration,
                    residual: rs,
                    damping: alpha,
                    linear_iterations: out.iterations,
                });
            }
            None => {
                return Err(last_breach.unwrap_or(PdeError::NoDescent { residual: rs }));
            }
        }
    }

    let worst = ev.worst_margin(&ev.margins_from(&data, coeffs, t));
    if worst.min_margin <= 0.0 {
        return Err(PdeError::ConeBreach {
            index: worst.index,
            point: worst.point,
            margin: worst.min_margin,
            reason: "converged state violates the cone condition".into(),
        });
    }
    Ok(SolveState {
        phi,
        t,
        slack,
        residual_sup: rs,
        min_cone_margin: worst.min_margin,
        newton_trace: trace,
        stages: Vec::new(),
        c0: coeffs.c0(),
        warnings: Vec::new(),
    })
}

/// Damped Newton iteration at fixed `t` on the bordered system for the
/// mean-zero potential and the slack scalar, starting from `initial` and zero
/// slack. `coeffs.c0()` is used as the path constant.
pub fn newton_solve(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
    t: f64,
    initial: &PotentialField,
    options: &NewtonOptions,
) -> Result<SolveState, PdeError> {
    if coeffs.n() != geom.n() || f_grid.len() != geom.len() {
        return Err(PdeError::Data("coefficients or f do not match the grid".into()));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(PdeError::Data(format!("t must lie in [0, 1], got {t}")));
    }
    let ev = Evaluator::new(geom);
    newton_core(&ev, coeffs, f_grid, t, initial, 0.0, options)
}
