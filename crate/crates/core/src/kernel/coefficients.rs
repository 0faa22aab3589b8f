use serde::{Deserialize, Serialize};

use super::KernelError;

/// Which branch of the hypotheses an equation instance falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// All `c_k` vanish; the equation is Monge-Ampère and `f` must be positive.
    AllZeroPositiveF,
    /// `sum c_k > 0`; `f` may dip below zero down to `f_m`.
    PositiveSum,
}

/// One equation instance: complex dimension, coefficients `c_1..c_{n-1}`,
/// the continuity-path constant `c_0` and the value of `int f chi^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoefficientSet {
    n: usize,
    c: Vec<f64>,
    c0: f64,
    f_integral: f64,
}

impl CoefficientSet {
    pub fn new(n: usize, c: Vec<f64>) -> Result<Self, KernelError> {
        if n == 0 {
            return Err(KernelError::InvalidCoefficients(
                "complex dimension must be at least 1".into(),
            ));
        }
        if c.len() != n - 1 {
            return Err(KernelError::InvalidCoefficients(format!(
                "expected {} coefficients c_1..c_{}, got {}",
                n - 1,
                n - 1,
                c.len()
            )));
        }
        if let Some((k, v)) = c.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
            return Err(KernelError::InvalidCoefficients(format!(
                "c_{} = {v} must be finite and non-negative",
                k + 1
            )));
        }
        Ok(Self {
            n,
            c,
            c0: 1.0,
            f_integral: 0.0,
        })
    }

    pub fn with_c0(mut self, c0: f64) -> Self {
        self.c0 = c0;
        self
    }

    pub fn with_f_integral(mut self, value: f64) -> Self {
        self.f_integral = value;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients `c_1..c_{n-1}` (index 0 holds `c_1`).
    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    /// `c_k` for `1 <= k <= n-1`, zero otherwise.
    pub fn c(&self, k: usize) -> f64 {
        if k == 0 || k >= self.n {
            0.0
        } else {
            self.c[k - 1]
        }
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn f_integral(&self) -> f64 {
        self.f_integral
    }

    /// Largest `k` with `c_k != 0`.
    pub fn zeta(&self) -> Option<usize> {
        self.c.iter().rposition(|&v| v != 0.0).map(|i| i + 1)
    }

    pub fn regime(&self) -> Regime {
        if self.c.iter().sum::<f64>() > 0.0 {
            Regime::PositiveSum
        } else {
            Regime::AllZeroPositiveF
        }
    }
}

/// Eigenvalues of `Omega` relative to `chi` at a point; strictly positive,
/// stored ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenProfile {
    lambda: Vec<f64>,
}

impl EigenProfile {
    pub fn new(mut lambda: Vec<f64>) -> Result<Self, KernelError> {
        check_positive(&lambda)?;
        lambda.sort_by(|a, b| a.total_cmp(b));
        Ok(Self { lambda })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

impl std::ops::Deref for EigenProfile {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.lambda
    }
}

pub(crate) fn check_positive(lambda: &[f64]) -> Result<(), KernelError> {
    match lambda.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        Some(v) => Err(KernelError::Domain(format!(
            "eigenvalues must be finite and strictly positive, found {v}"
        ))),
        None => Ok(()),
    }
}
