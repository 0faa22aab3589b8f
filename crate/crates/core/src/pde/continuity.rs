use serde::{Deserialize, Serialize};

use super::field::{cohomology_integrals, Evaluator};
use super::geometry::{PotentialField, TorusGeometry};
use super::newton::{newton_core, NewtonOptions, SolveState};
use super::PdeError;
use crate::kernel::{compute_fm, CoefficientSet, Regime};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageRecord {
    pub t: f64,
    pub dt: f64,
    pub newton_iterations: usize,
    pub residual_sup: f64,
    pub min_cone_margin: f64,
    pub slack: f64,
    pub phi_sup: f64,
}

const COMPATIBILITY_TOL: f64 = 1e-8;
const WARNING_BAND: f64 = 1e-10;
const MIN_STEP: f64 = 1e-4;

fn regime_warnings(coeffs: &CoefficientSet, c0: f64, f_grid: &[f64]) -> Vec<String> {
    let mut warnings = Vec::new();
    let f_min = f_grid.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = f_grid.iter().sum::<f64>() / f_grid.len() as f64;
    match coeffs.regime() {
        Regime::AllZeroPositiveF => {
            if f_min <= WARNING_BAND {
                warnings.push(format!(
                    "all c_k vanish but min f = {f_min:e} is not positive"
                ));
            }
        }
        Regime::PositiveSum => {
            if let Ok(budget) = compute_fm(coeffs, c0) {
                if f_min <= budget.fm + WARNING_BAND {
                    warnings.push(format!(
                        "min f = {f_min:e} is not above f_m = {:e}",
                        budget.fm
                    ));
                }
            }
        }
    }
    if mean < -WARNING_BAND {
        warnings.push(format!("mean of f is negative ({mean:e})"));
    }
    warnings
}

fn numerical(e: &PdeError) -> bool {
    matches!(
        e,
        PdeError::ConeBreach { .. }
            | PdeError::MaxIterExceeded { .. }
            | PdeError::NoDescent { .. }
            | PdeError::LinearSolveStall { .. }
    )
}

fn record(state: &SolveState, dt: f64) -> StageRecord {
    StageRecord {
        t: state.t,
        dt,
        newton_iterations: state.newton_trace.len(),
        residual_sup: state.residual_sup,
        min_cone_margin: state.min_cone_margin,
        slack: state.slack,
        phi_sup: state.phi.sup_norm(),
    }
}

/// March the continuity path from `t = 0` (Monge-Ampère with constant
/// right side `c_0`, solved by `phi = 0`) to `t = 1`, warm-starting each
/// stage. `c_0` is taken from the integral constraint.
pub fn continuity_solve(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
    options: &NewtonOptions,
) -> Result<SolveState, PdeError> {
    let integrals = cohomology_integrals(geom, coeffs, f_grid)?;
    if !(integrals.defect.abs() <= COMPATIBILITY_TOL) {
        return Err(PdeError::Compatibility {
            defect: integrals.defect,
        });
    }
    let coeffs = coeffs.clone().with_c0(integrals.c0);
    let warnings = regime_warnings(&coeffs, integrals.c0, f_grid);
    let ev = Evaluator::new(geom);

    let mut state = newton_core(&ev, &coeffs, f_grid, 0.0, &PotentialField::zeros(geom), 0.0, options)?;
    let mut trace = state.newton_trace.clone();
    let mut stages = vec![record(&state, 0.0)];
    let mut t = 0.0;
    let mut dt: f64 = 0.25;
    let mut successes = 0;
    while t < 1.0 {
        let step = dt.min(1.0 - t);
        let t_try = if t + step >= 1.0 { 1.0 } else { t + step };
        match newton_core(&ev, &coeffs, f_grid, t_try, &state.phi, state.slack, options) {
            Ok(next) => {
                t = t_try;
                trace.extend(next.newton_trace.iter().cloned());
                stages.push(record(&next, step));
                state = next;
                successes += 1;
                if successes == 2 {
                    dt *= 2.0;
                    successes = 0;
                }
            }
            Err(e) if numerical(&e) => {
                dt *= 0.5;
                successes = 0;
                if dt < MIN_STEP {
                    return Err(PdeError::StepUnderflow {
                        t,
                        dt,
                        last: e.to_string(),
                    });
                }
            }
            Err(e) => return Err(e),
        }
    }
    state.newton_trace = trace;
    state.stages = stages;
    state.c0 = integrals.c0;
    state.warnings = warnings;
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassPathEntry {
    pub s: f64,
    /// Constant added to `f` so the class `(1+s)[Omega_0]` is compatible.
    pub a_s: f64,
    pub solvable: bool,
    pub min_cone_margin: Option<f64>,
    pub slack: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassPathReport {
    pub entries: Vec<ClassPathEntry>,
    pub smallest_solvable: Option<f64>,
    /// No unsolvable `s` lies above a solvable one.
    pub upward_closed: bool,
}

/// Solve in the classes `(1+s)[Omega_0]` for each `s` of a strictly
/// decreasing list, shifting `f` by the constant the integral constraint
/// requires.
pub fn class_path_probe(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
    s_list: &[f64],
    options: &NewtonOptions,
) -> Result<ClassPathReport, PdeError> {
    if s_list.is_empty() || s_list.windows(2).any(|w| w[1] >= w[0]) || s_list.iter().any(|&s| s <= -1.0) {
        return Err(PdeError::Data(
            "s list must be non-empty, strictly decreasing and above -1".into(),
        ));
    }
    let mut entries = Vec::new();
    for &s in s_list {
        let scaled = geom.with_scaled_w0(1.0 + s)?;
        let integrals = cohomology_integrals(&scaled, coeffs, f_grid)?;
        let a_s = integrals.defect;
        let shifted: Vec<f64> = f_grid.iter().map(|f| f + a_s).collect();
        let entry = match continuity_solve(&scaled, coeffs, &shifted, options) {
            Ok(state) => ClassPathEntry {
                s,
                a_s,
                solvable: true,
                min_cone_margin: Some(state.min_cone_margin),
                slack: Some(state.slack),
                error: None,
            },
            Err(e) if numerical(&e) || matches!(e, PdeError::StepUnderflow { .. }) => ClassPathEntry {
                s,
                a_s,
                solvable: false,
                min_cone_margin: None,
                slack: None,
                error: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        entries.push(entry);
    }
    let smallest_solvable = entries
        .iter()
        .filter(|e| e.solvable)
        .map(|e| e.s)
        .fold(None, |a: Option<f64>, s| Some(a.map_or(s, |v| v.min(s))));
    let upward_closed = entries
        .iter()
        .enumerate()
        .all(|(j, e)| !e.solvable || entries[..j].iter().all(|above| above.solvable));
    Ok(ClassPathReport {
        entries,
        smallest_solvable,
        upward_closed,
    })
}
