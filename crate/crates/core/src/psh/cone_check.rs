//! The epsilon-uniform and degenerate cone conditions on mollified Hessians.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mollifier::RadialMollifier;
use super::mollify::{check_ball, mollified_hessian, BallRule};
use super::potential::Potential;
use super::quadrature::Resolution;
use super::{Complex64, PshError};
use crate::kernel::{loads_with_floor, CoefficientSet};

/// Real symmetric positive definite `chi` as a Hermitian matrix.
pub fn hermitian_of(chi: &DMatrix<f64>) -> DMatrix<Complex64> {
    chi.map(|v| Complex64::new(v, 0.0))
}

/// Eigenvalues of `omega` relative to `chi0`.
pub fn relative_eigenvalues(omega: &DMatrix<Complex64>, chi0: &DMatrix<f64>) -> Result<Vec<f64>, PshError> {
    let chol = chi0
        .clone()
        .cholesky()
        .ok_or_else(|| PshError::Domain("comparison form is not positive definite".into()))?;
    let linv = hermitian_of(&chol.l().try_inverse().expect("triangular factor is invertible"));
    let b = &linv * omega * linv.adjoint();
    let b = (&b + b.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(b).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `(1 - epsilon) - max_i load_i` for `omega` against `chi0`; `None` when
/// `omega` is not positive relative to `chi0`.
pub fn uniform_margin(
    coeffs: &CoefficientSet,
    omega: &DMatrix<Complex64>,
    chi0: &DMatrix<f64>,
    epsilon: f64,
) -> Result<Option<f64>, PshError> {
    let ev = relative_eigenvalues(omega, chi0)?;
    if ev.iter().any(|l| !(*l > 0.0)) {
        return Ok(None);
    }
    Ok(Some(loads_with_floor(coeffs, &ev, epsilon)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeVerdict {
    /// Every checked point, scale and comparison form passed. This is a
    /// statement about the checked range only.
    NoViolationInCheckedRange,
    ViolationFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaSummary {
    pub delta: f64,
    pub checked_points: usize,
    pub skipped_points: usize,
    /// Points where the mollified form is not positive definite.
    pub non_positive_points: usize,
    pub worst_margin: Option<f64>,
    pub worst_point: Option<Vec<f64>>,
    pub worst_scaling: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UniformConeReport {
    pub epsilon: f64,
    pub per_delta: Vec<DeltaSummary>,
    pub worst_margin: Option<f64>,
    pub verdict: ConeVerdict,
}

#[derive(Debug, Clone)]
pub struct UniformConeCheck {
    pub epsilon: f64,
    pub deltas: Vec<f64>,
    /// Real symmetric positive definite reference form.
    pub chi: DMatrix<f64>,
    /// Comparison forms `chi_0 = s chi` with `0 < s <= 1`.
    pub chi0_scalings: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub resolution: Resolution,
}

impl UniformConeCheck {
    fn validate(&self, n: usize) -> Result<(), PshError> {
        if self.deltas.is_empty() {
            return Err(PshError::Empty("delta list is empty".into()));
        }
        if self.deltas.iter().any(|d| !(*d > 0.0)) {
            return Err(PshError::Domain("every delta must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(PshError::Domain("epsilon must lie in [0, 1)".into()));
        }
        if self.chi0_scalings.is_empty() || self.chi0_scalings.iter().any(|s| !(*s > 0.0 && *s <= 1.0)) {
            return Err(PshError::Domain("chi0 scalings must be non-empty and lie in (0, 1]".into()));
        }
        if self.chi.nrows() != n || self.chi.ncols() != n {
            return Err(PshError::Domain(format!("chi must be {n} x {n}")));
        }
        Ok(())
    }
}

/// `delta_j = 2^{-j} delta_0`, `j = 0..count`.
pub fn geometric_deltas(delta0: f64, count: usize) -> Vec<f64> {
    (0..count).map(|j| delta0 * 0.5f64.powi(j as i32)).collect()
}

/// `1 - 2^{-j}`, `j = 1..=count`.
pub fn standard_scalings(count: usize) -> Vec<f64> {
    (1..=count).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect()
}

/// Checks the epsilon-uniform cone inequality for the mollified Hessian of
/// `field` (optionally shifted by a constant Hermitian form) at every point
/// whose `delta`-ball lies in the domain.
pub fn check_uniform_cone(
    field: &dyn Potential,
    coeffs: &CoefficientSet,
    mollifier: &RadialMollifier,
    check: &UniformConeCheck,
) -> Result<UniformConeReport, PshError> {
    check_shifted(field, coeffs, mollifier, check, None)
}

fn check_shifted(
    field: &dyn Potential,
    coeffs: &CoefficientSet,
    mollifier: &RadialMollifier,
    check: &UniformConeCheck,
    shift: Option<&DMatrix<Complex64>>,
) -> Result<UniformConeReport, PshError> {
    let n = coeffs.n();
    if field.real_dim() != 2 * n || mollifier.n() != n {
        return Err(PshError::Domain("field, mollifier and coefficients disagree on n".into()));
    }
    check.validate(n)?;
    let rule = BallRule::new(mollifier, check.resolution);
    let chi0s: Vec<(f64, DMatrix<f64>)> = check.chi0_scalings.iter().map(|&s| (s, &check.chi * s)).collect();
    let mut per_delta = Vec::new();
    for &delta in &check.deltas {
        let results: Vec<Result<Option<Vec<(f64, Option<f64>)>>, PshError>> = check
            .points
            .par_iter()
            .map(|x| {
                if check_ball(field, x, delta).is_err() {
                    return Ok(None);
                }
                let mut h = mollified_hessian(field, &rule, delta, x)?;
                if let Some(s) = shift {
                    h += s;
                }
                chi0s
                    .iter()
                    .map(|(s, chi0)| Ok((*s, uniform_margin(coeffs, &h, chi0, check.epsilon)?)))
                    .collect::<Result<Vec<_>, PshError>>()
                    .map(Some)
            })
            .collect();
        let mut summary = DeltaSummary {
            delta,
            checked_points: 0,
            skipped_points: 0,
            non_positive_points: 0,
            worst_margin: None,
            worst_point: None,
            worst_scaling: None,
        };
        for (x, r) in check.points.iter().zip(results) {
            match r? {
                None => summary.skipped_points += 1,
                Some(per_scaling) => {
                    summary.checked_points += 1;
                    let mut non_positive = false;
                    for (s, m) in per_scaling {
                        match m {
                            None => non_positive = true,
                            Some(m) => {
                                if summary.worst_margin.is_none_or(|w| m < w) {
                                    summary.worst_margin = Some(m);
                                    summary.worst_point = Some(x.clone());
                                    summary.worst_scaling = Some(s);
                                }
                            }
                        }
                    }
                    if non_positive {
                        summary.non_positive_points += 1;
                    }
                }
            }
        }
        per_delta.push(summary);
    }
    let worst_margin = per_delta
        .iter()
        .filter_map(|d| d.worst_margin)
        .fold(None, |a: Option<f64>, m| Some(a.map_or(m, |v| v.min(m))));
    let violated = per_delta.iter().any(|d| d.non_positive_points > 0) || worst_margin.is_some_and(|m| m < 0.0);
    Ok(UniformConeReport {
        epsilon: check.epsilon,
        per_delta,
        worst_margin,
        verdict: if violated {
            ConeVerdict::ViolationFound
        } else {
            ConeVerdict::NoViolationInCheckedRange
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegenerateStep {
    pub epsilon: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegenerateConeReport {
    pub steps: Vec<(DegenerateStep, UniformConeReport)>,
    pub verdict: ConeVerdict,
}

/// For each `(epsilon_i, mu_i)`, checks the epsilon_i-uniform condition for
/// `phi + mu_i q_chi`, where `q_chi` is the quadratic with `d dbar q_chi = chi`.
pub fn check_degenerate_cone(
    field: &dyn Potential,
    coeffs: &CoefficientSet,
    mollifier: &RadialMollifier,
    steps: &[DegenerateStep],
    check: &UniformConeCheck,
) -> Result<DegenerateConeReport, PshError> {
    if steps.is_empty() {
        return Err(PshError::Empty("no (epsilon, mu) steps given".into()));
    }
    let chi = hermitian_of(&check.chi);
    let mut out = Vec::new();
    for step in steps {
        let shift = &chi * Complex64::new(step.mu, 0.0);
        let mut local = check.clone();
        local.epsilon = step.epsilon;
        out.push((*step, check_shifted(field, coeffs, mollifier, &local, Some(&shift))?));
    }
    let verdict = if out.iter().all(|(_, r)| r.verdict == ConeVerdict::NoViolationInCheckedRange) {
        ConeVerdict::NoViolationInCheckedRange
    } else {
        ConeVerdict::ViolationFound
    };
    Ok(DegenerateConeReport { steps: out, verdict })
}

/// Unmollified margin `(1 - epsilon) - max load` of the Hessian at `x`.
pub fn pointwise_margin(
    field: &dyn Potential,
    coeffs: &CoefficientSet,
    chi0: &DMatrix<f64>,
    epsilon: f64,
    x: &[f64],
) -> Result<Option<f64>, PshError> {
    uniform_margin(coeffs, &field.complex_hessian(x), chi0, epsilon)
}
