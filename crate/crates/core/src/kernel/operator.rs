//! The continuity-path operator `F_{t,p}` and the cone condition.

use serde::{Deserialize, Serialize};

use super::coefficients::check_positive;
use super::{binomial_f64, deleted_tables, elem_sym_all, CoefficientSet, KernelError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConeReport {
    pub per_index_load: Vec<f64>,
    pub margin: f64,
    pub satisfied: bool,
}

fn check_dims(coeffs: &CoefficientSet, lambda: &[f64]) -> Result<(), KernelError> {
    if lambda.len() != coeffs.n() {
        return Err(KernelError::Domain(format!(
            "expected {} eigenvalues, got {}",
            coeffs.n(),
            lambda.len()
        )));
    }
    check_positive(lambda)
}

fn reciprocals(lambda: &[f64]) -> Vec<f64> {
    lambda.iter().map(|l| 1.0 / l).collect()
}

/// Per-index loads `sum_k t c_k / C(n,k) * S_{n-k;i}(1/lambda)`.
pub fn cone_loads(coeffs: &CoefficientSet, t: f64, lambda: &[f64]) -> Result<Vec<f64>, KernelError> {
    check_dims(coeffs, lambda)?;
    let n = coeffs.n();
    let x = reciprocals(lambda);
    let tables = deleted_tables(&x);
    Ok(tables
        .iter()
        .map(|e| {
            (1..n)
                .map(|k| t * coeffs.c(k) / binomial_f64(n, k) * e[n - k])
                .sum()
        })
        .collect())
}

/// Cone condition `1 > load_i` for every `i`, reported with its margin.
pub fn cone_margin(
    coeffs: &CoefficientSet,
    t: f64,
    lambda: &[f64],
) -> Result<ConeReport, KernelError> {
    let per_index_load = cone_loads(coeffs, t, lambda)?;
    let worst = per_index_load.iter().copied().fold(0.0_f64, f64::max);
    let margin = 1.0 - worst;
    Ok(ConeReport {
        per_index_load,
        margin,
        satisfied: margin > 0.0,
    })
}

/// Loads evaluated against a floor `1 - epsilon`: returns `(1 - epsilon) - max load`.
pub fn loads_with_floor(
    coeffs: &CoefficientSet,
    lambda: &[f64],
    epsilon: f64,
) -> Result<f64, KernelError> {
    let loads = cone_loads(coeffs, 1.0, lambda)?;
    Ok(1.0 - epsilon - loads.iter().copied().fold(0.0_f64, f64::max))
}

fn zeroth_order(coeffs: &CoefficientSet, t: f64, f_at_p: f64) -> f64 {
    t * f_at_p + (1.0 - t) * coeffs.c0()
}

/// `F_{t,p}(lambda) = sum_k t c_k / C(n,k) sigma_{n-k} + (t f + (1-t) c_0) sigma_n`.
/// `F = 1` is the pointwise form of the continuity path.
pub fn eval_f(
    coeffs: &CoefficientSet,
    t: f64,
    f_at_p: f64,
    lambda: &[f64],
) -> Result<f64, KernelError> {
    check_dims(coeffs, lambda)?;
    let n = coeffs.n();
    let sigma = elem_sym_all(&reciprocals(lambda));
    let mut value = zeroth_order(coeffs, t, f_at_p) * sigma[n];
    for k in 1..n {
        value += t * coeffs.c(k) / binomial_f64(n, k) * sigma[n - k];
    }
    Ok(value)
}

/// Analytic partials `dF/dlambda_i`.
pub fn grad_f(
    coeffs: &CoefficientSet,
    t: f64,
    f_at_p: f64,
    lambda: &[f64],
) -> Result<Vec<f64>, KernelError> {
    check_dims(coeffs, lambda)?;
    let n = coeffs.n();
    let x = reciprocals(lambda);
    let tables = deleted_tables(&x);
    let a = zeroth_order(coeffs, t, f_at_p);
    Ok(tables
        .iter()
        .zip(&x)
        .map(|(e, xi)| {
            // d sigma_m / d lambda_i = -x_i^2 S_{m-1;i}(x)
            let mut inner = a * e[n - 1];
            for k in 1..n {
                inner += t * coeffs.c(k) / binomial_f64(n, k) * e[n - k - 1];
            }
            -xi * xi * inner
        })
        .collect())
}

/// `sum_i -lambda_i dF/dlambda_i`, by its closed form
/// `sum_k t (n-k) c_k / C(n,k) sigma_{n-k} + n (t f + (1-t) c_0) sigma_n`.
pub fn euler_weighted_sum(
    coeffs: &CoefficientSet,
    t: f64,
    f_at_p: f64,
    lambda: &[f64],
) -> Result<f64, KernelError> {
    check_dims(coeffs, lambda)?;
    let n = coeffs.n();
    let sigma = elem_sym_all(&reciprocals(lambda));
    let mut value = n as f64 * zeroth_order(coeffs, t, f_at_p) * sigma[n];
    for k in 1..n {
        value += t * (n - k) as f64 * coeffs.c(k) / binomial_f64(n, k) * sigma[n - k];
    }
    Ok(value)
}
