//! Toric form of the intersection-number criterion: moment polytopes of the
//! two classes, intersection numbers on their faces as lattice-normalized
//! mixed volumes, and the per-face positivity test. All arithmetic is exact.

pub mod criterion;
pub mod hull;
pub mod io;
pub mod mixed;
pub mod polytope;
pub mod rational;

use thiserror::Error;

pub use criterion::{
    check_criterion, check_criterion_with_set, jequation_constant, uniform_epsilon, ClassPolytopePair,
    CriterionReport, FaceCriterion, WholeSpaceTerm, WHOLE_SPACE_ID,
};
pub use io::{FacetName, ToricConfig};
pub use mixed::{minkowski_sum, mixed_volume};
pub use polytope::{Face, Facet, RationalPolytope};
pub use rational::{format_rational, parse_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("fan mismatch: {0}")]
    FanMismatch(String),
    #[error("exponent mismatch: {0}")]
    ExponentMismatch(String),
    #[error("invalid coefficients: {0}")]
    Coefficients(String),
}
