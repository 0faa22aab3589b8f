//! Plurisubharmonic potentials on `C^n`: radial mollification, uniform and
//! degenerate cone checks on mollified Hessians, Lelong numbers at level
//! delta, the constant `c_n`, and gluing with a smoothed maximum.
//!
//! Points of `C^n` are stored as `R^{2n}` vectors `(x_1, y_1, ..., x_n, y_n)`.

mod cone_check;
mod glue;
mod lelong;
mod mollifier;
mod mollify;
mod potential;
pub mod quadrature;
mod regmax;

use thiserror::Error;

use crate::kernel::KernelError;

pub type Complex64 = nalgebra::Complex<f64>;

pub use cone_check::{
    check_degenerate_cone, check_uniform_cone, geometric_deltas, hermitian_of, pointwise_margin,
    relative_eigenvalues, standard_scalings, uniform_margin, ConeVerdict, DegenerateConeReport,
    DegenerateStep, DeltaSummary, UniformConeCheck, UniformConeReport,
};
pub use glue::{glue_potentials, GlueConflict, GlueKind, GluePiece, GlueReport, GlueSetup};
pub use lelong::{ball_sup, lelong_level, lelong_level_with, LelongLevelResult, SupSampling};
pub use mollifier::{compute_cn, sphere_area, Profile, RadialMollifier};
pub use mollify::{log_sphere_mean, mollified_hessian, mollify, mollify_log, mollify_with, BallRule};
pub use potential::{
    complex_from_real, fd_hessian, real_from_complex, ConstantPotential, FnPotential, Potential,
    QuadraticPotential, SampledPotential, SingularPotential,
};
pub use quadrature::Resolution;
pub use regmax::{regularized_max, regularized_max_kappa, regularized_max_pair, theta, theta_cdf};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PshError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("state error: {0}")]
    State(String),
    #[error("empty input: {0}")]
    Empty(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
