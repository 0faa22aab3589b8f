//! Pointwise fields on the grid: eigenvalues of `Omega_phi` relative to
//! `chi`, the residual of the continuity path, its linearization and cone
//! margins.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::derivatives::Differentiator;
use super::geometry::{PotentialField, TorusGeometry};
use super::PdeError;
use crate::kernel::{binomial_f64, cone_loads, deleted_tables, elem_sym_all, CoefficientSet};

/// Eigen-decomposition of the symmetric matrix, exact on diagonal input.
pub(crate) fn sym_eigen(b: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = b.nrows();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || b[(i, j)] == 0.0));
    if diagonal {
        return ((0..n).map(|i| b[(i, i)]).collect(), DMatrix::identity(n, n));
    }
    let eig = SymmetricEigen::new(b);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Eigenvalues of `X^{-1} M` through `L^{-1} M L^{-T}`.
pub(crate) fn relative_eigen(linv: &DMatrix<f64>, m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let b = linv * m * linv.transpose();
    let b = (&b + b.transpose()) * 0.5;
    sym_eigen(b)
}

#[derive(Debug, Clone)]
pub(crate) struct PointData {
    pub lambda: Vec<f64>,
    pub q: DMatrix<f64>,
}

/// Holds the grid geometry together with its differentiation plans.
#[derive(Debug, Clone)]
pub(crate) struct Evaluator {
    pub geom: TorusGeometry,
    pub diff: Arc<Differentiator>,
}

impl Evaluator {
    pub fn new(geom: &TorusGeometry) -> Self {
        Self {
            geom: geom.clone(),
            diff: Arc::new(Differentiator::new(geom)),
        }
    }

    fn check_phi(&self, phi: &PotentialField) -> Result<(), PdeError> {
        if phi.values.len() != self.geom.len() {
            return Err(PdeError::Data(format!(
                "potential has {} values, grid has {}",
                phi.values.len(),
                self.geom.len()
            )));
        }
        if phi.values.iter().any(|v| !v.is_finite()) {
            return Err(PdeError::Data("potential has non-finite values".into()));
        }
        Ok(())
    }

    /// `W(x) = W0 + (1/4) D^2 phi(x)` at every point.
    pub fn forms(&self, phi: &PotentialField) -> Result<Vec<DMatrix<f64>>, PdeError> {
        self.check_phi(phi)?;
        let n = self.geom.n();
        let h = self.diff.hessian(&phi.values);
        let pairs = self.diff.pairs();
        let w0 = self.geom.w0();
        Ok((0..self.geom.len())
            .into_par_iter()
            .map(|i| {
                let mut w = w0.clone();
                for (p, &(a, b)) in pairs.iter().enumerate() {
                    let v = 0.25 * h[p][i];
                    w[(a, b)] += v;
                    if a != b {
                        w[(b, a)] += v;
                    }
                }
                debug_assert_eq!(w.nrows(), n);
                w
            })
            .collect())
    }

    /// Eigen data at every point; fails with `ConeBreach` at the point with the
    /// smallest eigenvalue if `Omega_phi` is not positive definite somewhere.
    pub fn points(&self, phi: &PotentialField) -> Result<Vec<PointData>, PdeError> {
        let forms = self.forms(phi)?;
        let linv = self.geom.chol_inverse();
        let data: Vec<PointData> = forms
            .into_par_iter()
            .map(|w| {
                let (lambda, q) = relative_eigen(linv, &w);
                PointData { lambda, q }
            })
            .collect();
        let mut worst: Option<(usize, f64)> = None;
        for (i, d) in data.iter().enumerate() {
            let m = d.lambda.iter().copied().fold(f64::INFINITY, f64::min);
            if !(m.is_finite() && m > 0.0) && worst.is_none_or(|(_, w)| m < w || m.is_nan()) {
                worst = Some((i, m));
            }
        }
        if let Some((i, m)) = worst {
            return Err(PdeError::ConeBreach {
                index: i,
                point: self.geom.point(i),
                margin: f64::NEG_INFINITY,
                reason: format!("Omega_phi not positive definite (smallest eigenvalue {m:e})"),
            });
        }
        Ok(data)
    }

    pub fn residual_from(
        &self,
        data: &[PointData],
        coeffs: &CoefficientSet,
        f_grid: &[f64],
        t: f64,
        slack: f64,
    ) -> Vec<f64> {
        let n = self.geom.n();
        let c0 = coeffs.c0();
        data.par_iter()
            .zip(f_grid.par_iter())
            .map(|(d, &f)| {
                let e = elem_sym_all(&d.lambda);
                let mut rhs = f;
                for k in 1..n {
                    rhs += coeffs.c(k) / binomial_f64(n, k) * e[k];
                }
                e[n] - t * rhs - (1.0 - t) * c0 - slack
            })
            .collect()
    }

    pub fn margins_from(&self, data: &[PointData], coeffs: &CoefficientSet, t: f64) -> Vec<f64> {
        data.par_iter()
            .map(|d| {
                let loads = cone_loads(coeffs, t, &d.lambda).expect("positive eigenvalues");
                1.0 - loads.iter().copied().fold(0.0_f64, f64::max)
            })
            .collect()
    }

    pub fn worst_margin(&self, margins: &[f64]) -> MarginField {
        let mut index = 0;
        for (i, &m) in margins.iter().enumerate() {
            if m < margins[index] {
                index = i;
            }
        }
        MarginField {
            min_margin: margins[index],
            index,
            point: self.geom.point(index),
        }
    }

    pub fn linearize_from(
        &self,
        data: &[PointData],
        coeffs: &CoefficientSet,
        t: f64,
    ) -> Result<LinearizedOperator, PdeError> {
        let worst = self.worst_margin(&self.margins_from(data, coeffs, t));
        if worst.min_margin <= 0.0 {
            return Err(PdeError::ConeBreach {
                index: worst.index,
                point: worst.point,
                margin: worst.min_margin,
                reason: "cone condition fails; linearization is not elliptic".into(),
            });
        }
        let n = self.geom.n();
        let linv = self.geom.chol_inverse();
        let pairs = self.diff.pairs().to_vec();
        let per_point: Vec<Vec<f64>> = data
            .par_iter()
            .map(|d| {
                let tables = deleted_tables(&d.lambda);
                let g: Vec<f64> = tables
                    .iter()
                    .map(|e| {
                        let mut v = e[n - 1];
                        for k in 1..n {
                            v -= t * coeffs.c(k) / binomial_f64(n, k) * e[k - 1];
                        }
                        v
                    })
                    .collect();
                let inner = &d.q * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(g)) * d.q.transpose();
                let gmat = linv.transpose() * inner * linv;
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let sym = if a == b { 1.0 } else { 2.0 };
                        0.25 * sym * 0.5 * (gmat[(a, b)] + gmat[(b, a)])
                    })
                    .collect()
            })
            .collect();
        let weights: Vec<Vec<f64>> = (0..pairs.len())
            .map(|p| per_point.iter().map(|w| w[p]).collect())
            .collect();
        let mean: Vec<f64> = weights
            .iter()
            .map(|w| w.iter().sum::<f64>() / w.len() as f64)
            .collect();
        let symbol = self.diff.combined_symbol(&mean);
        Ok(LinearizedOperator {
            diff: Arc::clone(&self.diff),
            weights,
            symbol,
        })
    }
}

/// Matrix-free derivative of the residual with respect to `phi`:
/// `psi -> sum_ab G_ab(x) (1/4) d_a d_b psi`. The derivative with respect to
/// the slack scalar is `-1`.
#[derive(Debug, Clone)]
pub struct LinearizedOperator {
    diff: Arc<Differentiator>,
    weights: Vec<Vec<f64>>,
    symbol: Vec<f64>,
}

impl LinearizedOperator {
    pub fn len(&self) -> usize {
        self.diff.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diff.is_empty()
    }

    pub fn apply(&self, psi: &[f64]) -> Vec<f64> {
        let spec = self.diff.forward(psi);
        let mut out = vec![0.0; psi.len()];
        for (p, w) in self.weights.iter().enumerate() {
            let d = self.diff.second_from_spectrum(&spec, p);
            for ((o, wi), di) in out.iter_mut().zip(w).zip(&d) {
                *o += wi * di;
            }
        }
        out
    }

    /// Derivative of the residual with respect to the slack scalar.
    pub fn slack_derivative(&self) -> f64 {
        -1.0
    }

    /// Bordered map `(psi, sigma) -> (L psi - sigma, mean psi)`, packed as a
    /// vector of length `N + 1`.
    pub fn apply_bordered(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        let (psi, sigma) = (&v[..n], v[n]);
        let mut out = self.apply(psi);
        for o in &mut out {
            *o += self.slack_derivative() * sigma;
        }
        out.push(psi.iter().sum::<f64>() / n as f64);
        out
    }

    /// Exact inverse of the bordered map with coefficients replaced by their
    /// grid averages.
    pub fn precondition(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        let (r, s) = (&v[..n], v[n]);
        let mean_r = r.iter().sum::<f64>() / n as f64;
        let mut out = self.diff.solve_constant(&self.symbol, r);
        for o in &mut out {
            *o += s;
        }
        out.push(-mean_r);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MarginField {
    pub min_margin: f64,
    pub index: usize,
    pub point: Vec<f64>,
}

/// Per-point forms `W(x) = W0 + (1/4) D^2 phi` together with `X`.
#[derive(Debug, Clone)]
pub struct HessianField {
    forms: Vec<DMatrix<f64>>,
    x: DMatrix<f64>,
    linv: DMatrix<f64>,
}

impl HessianField {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// The symmetric form `W(x)`.
    pub fn form(&self, i: usize) -> &DMatrix<f64> {
        &self.forms[i]
    }

    /// `A(x) = X^{-1} W(x)`.
    pub fn relative(&self, i: usize) -> DMatrix<f64> {
        self.x.clone().cholesky().expect("X is positive definite").solve(&self.forms[i])
    }

    /// Eigenvalues of `A(x)`, ascending.
    pub fn eigenvalues(&self, i: usize) -> Vec<f64> {
        let (mut l, _) = relative_eigen(&self.linv, &self.forms[i]);
        l.sort_by(|a, b| a.total_cmp(b));
        l
    }
}

pub fn hessian_field(geom: &TorusGeometry, phi: &PotentialField) -> Result<HessianField, PdeError> {
    let ev = Evaluator::new(geom);
    Ok(HessianField {
        forms: ev.forms(phi)?,
        x: geom.x().clone(),
        linv: geom.chol_inverse().clone(),
    })
}

fn check_f(geom: &TorusGeometry, f_grid: &[f64]) -> Result<(), PdeError> {
    if f_grid.len() != geom.len() {
        return Err(PdeError::Data(format!(
            "f has {} values, grid has {}",
            f_grid.len(),
            geom.len()
        )));
    }
    if f_grid.iter().any(|v| !v.is_finite()) {
        return Err(PdeError::Data("f has non-finite values".into()));
    }
    Ok(())
}

fn check_coeffs(geom: &TorusGeometry, coeffs: &CoefficientSet) -> Result<(), PdeError> {
    if coeffs.n() != geom.n() {
        return Err(PdeError::Data(format!(
            "coefficients are for n = {}, torus has n = {}",
            coeffs.n(),
            geom.n()
        )));
    }
    Ok(())
}

/// `r = e_n(lambda) - t (sum_k c_k/C(n,k) e_k(lambda) + f) - (1-t) c_0 - slack`.
pub fn residual(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
    t: f64,
    phi: &PotentialField,
    slack: f64,
) -> Result<Vec<f64>, PdeError> {
    check_coeffs(geom, coeffs)?;
    check_f(geom, f_grid)?;
    let ev = Evaluator::new(geom);
    let data = ev.points(phi)?;
    Ok(ev.residual_from(&data, coeffs, f_grid, t, slack))
}

pub fn linearize(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
    t: f64,
    phi: &PotentialField,
) -> Result<LinearizedOperator, PdeError> {
    check_coeffs(geom, coeffs)?;
    check_f(geom, f_grid)?;
    let ev = Evaluator::new(geom);
    let data = ev.points(phi)?;
    ev.linearize_from(&data, coeffs, t)
}

/// Smallest cone margin over the grid; `-inf` where `Omega_phi` is not
/// positive definite.
pub fn cone_margin_field(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    t: f64,
    phi: &PotentialField,
) -> Result<MarginField, PdeError> {
    check_coeffs(geom, coeffs)?;
    let ev = Evaluator::new(geom);
    let forms = ev.forms(phi)?;
    let linv = geom.chol_inverse();
    let margins: Vec<f64> = forms
        .par_iter()
        .map(|w| {
            let (lambda, _) = relative_eigen(linv, w);
            if lambda.iter().all(|&l| l > 0.0 && l.is_finite()) {
                let loads = cone_loads(coeffs, t, &lambda).expect("positive eigenvalues");
                1.0 - loads.iter().copied().fold(0.0_f64, f64::max)
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    Ok(ev.worst_margin(&margins))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManufacturedCase {
    pub phi_star: PotentialField,
    pub f_grid: Vec<f64>,
    pub coeffs: CoefficientSet,
}

/// Source term for which `phi_star` solves the equation at `t = 1`.
pub fn manufacture(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    phi_star: &PotentialField,
) -> Result<ManufacturedCase, PdeError> {
    check_coeffs(geom, coeffs)?;
    let ev = Evaluator::new(geom);
    let data = ev.points(phi_star)?;
    let worst = ev.worst_margin(&ev.margins_from(&data, coeffs, 1.0));
    if worst.min_margin <= 0.0 {
        return Err(PdeError::ConeBreach {
            index: worst.index,
            point: worst.point,
            margin: worst.min_margin,
            reason: "manufactured potential violates the cone condition".into(),
        });
    }
    let n = geom.n();
    let f_grid = data
        .par_iter()
        .map(|d| {
            let e = elem_sym_all(&d.lambda);
            let mut f = e[n];
            for k in 1..n {
                f -= coeffs.c(k) / binomial_f64(n, k) * e[k];
            }
            f
        })
        .collect();
    Ok(ManufacturedCase {
        phi_star: phi_star.clone(),
        f_grid,
        coeffs: coeffs.clone(),
    })
}

/// Normalized intersection numbers of the constant classes and the
/// compatibility defect of the integral constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CohomologyIntegrals {
    /// `int Omega_0^k chi^{n-k} / int chi^n` for `k = 0..=n`.
    pub values: Vec<f64>,
    /// The continuity-path constant, `value_n`.
    pub c0: f64,
    pub mean_f: f64,
    /// `value_n - sum_k c_k value_k - mean(f)`.
    pub defect: f64,
}

pub fn cohomology_integrals(
    geom: &TorusGeometry,
    coeffs: &CoefficientSet,
    f_grid: &[f64],
) -> Result<CohomologyIntegrals, PdeError> {
    check_coeffs(geom, coeffs)?;
    check_f(geom, f_grid)?;
    let n = geom.n();
    let (lambda, _) = relative_eigen(geom.chol_inverse(), geom.w0());
    let e = elem_sym_all(&lambda);
    let values: Vec<f64> = (0..=n).map(|k| e[k] / binomial_f64(n, k)).collect();
    let mean_f = f_grid.iter().sum::<f64>() / f_grid.len() as f64;
    let mut defect = values[n] - mean_f;
    for k in 1..n {
        defect -= coeffs.c(k) * values[k];
    }
    Ok(CohomologyIntegrals {
        c0: values[n],
        values,
        mean_f,
        defect,
    })
}
