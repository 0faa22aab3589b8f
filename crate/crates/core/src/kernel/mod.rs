//! Pointwise algebra of the generalised Monge-Ampère operator
//!
//! `Omega^n = sum_k c_k chi^{n-k} Omega^k + f chi^n`.
//!
//! At a point, with `lambda` the eigenvalues of `Omega` relative to `chi`,
//! every quantity here is a function of `lambda` alone. Reciprocal
//! symmetric polynomials `sigma_k = S_k(1/lambda)` are used throughout.

mod coefficients;
mod constants;
mod operator;
mod oracle;
pub mod selfcheck;
mod symmetric;

use thiserror::Error;

pub use coefficients::{CoefficientSet, EigenProfile, Regime};
pub use constants::{
    binomial_restriction_identities, compute_fm, min_eig_ei,
    product_identity, restricted_coefficients, restriction_chain_identity, strict_cone_epsilon,
    FmBudget, RestrictedCoefficients, K_SAFETY_FACTOR,
};
pub use operator::{
    cone_loads, cone_margin, euler_weighted_sum, eval_f, grad_f, loads_with_floor, ConeReport,
};
pub use oracle::{maclaurin_chain, wedge_density_oracle};
pub use symmetric::{binomial, elem_sym, elem_sym_all, elem_sym_deleted};

pub(crate) use symmetric::{binomial_f64, deleted_tables};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),
    #[error("state error: {0}")]
    State(String),
}
