//! Continuity-method solver for the generalised Monge-Ampère equation on a
//! flat complex torus, restricted to potentials that depend only on the real
//! parts of the coordinates.
//!
//! The torus is `[0,1)^n` with `n <= 3`; for such potentials the complex
//! Hessian is a quarter of the real Hessian, so
//! `Omega_phi = W0 + (1/4) D^2 phi` relative to the constant form `X` of `chi`.

mod continuity;
mod derivatives;
mod field;
mod forcing;
mod geometry;
pub mod grid_io;
mod gmres;
mod newton;

use thiserror::Error;

use crate::kernel::KernelError;

pub use continuity::{
    class_path_probe, continuity_solve, ClassPathEntry, ClassPathReport, StageRecord,
};
pub use derivatives::Differentiator;
pub use field::{
    cohomology_integrals, cone_margin_field, hessian_field, linearize, manufacture, residual,
    CohomologyIntegrals, HessianField, LinearizedOperator, ManufacturedCase, MarginField,
};
pub use forcing::{TrigPolynomial, TrigTerm, WaveKind};
pub use geometry::{PotentialField, Scheme, TorusGeometry};
pub use gmres::{gmres, GmresOutcome};
pub use newton::{newton_solve, NewtonOptions, NewtonStep, SolveState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PdeError {
    #[error("invalid data: {0}")]
    Data(String),
    #[error("cone breach at grid point {index} {point:?}: {reason} (margin {margin:e})")]
    ConeBreach {
        index: usize,
        point: Vec<f64>,
        margin: f64,
        reason: String,
    },
    #[error("Newton did not converge in {iterations} iterations (residual {residual:e})")]
    MaxIterExceeded { iterations: usize, residual: f64 },
    #[error("no damping factor down to 2^-20 decreased the residual (residual {residual:e})")]
    NoDescent { residual: f64 },
    #[error("linear solve stalled at relative residual {relative_residual:e}")]
    LinearSolveStall { relative_residual: f64 },
    #[error("continuity step underflow at t = {t} (dt = {dt:e}): {last}")]
    StepUnderflow { t: f64, dt: f64, last: String },
    #[error("compatibility defect {defect:e} exceeds 1e-8")]
    Compatibility { defect: f64 },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
