//! Intersection numbers on faces of a pair of polytopes with a common normal
//! fan, and the face-by-face positivity test built from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hull::{area2d, lattice_area, lattice_length};
use super::mixed::minkowski_sum;
use super::polytope::{Face, RationalPolytope};
use super::rational::{format_rational, primitive, scale, to_f64, Q};
use super::ToricError;
use crate::kernel::CoefficientSet;

pub const WHOLE_SPACE_ID: &str = "M";

pub const SCOPE_NOTE: &str =
    "verdict covers torus-invariant subvarieties (faces of the moment polytope) of torus-invariant classes";

fn binom(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(r)
}

/// Moment polytopes of `[Omega_0]` and `[chi]` with identical normal fans.
#[derive(Debug, Clone)]
pub struct ClassPolytopePair {
    omega: RationalPolytope,
    chi: RationalPolytope,
    names: Vec<String>,
}

impl ClassPolytopePair {
    pub fn new(omega: RationalPolytope, chi: RationalPolytope) -> Result<Self, ToricError> {
        if omega.dim() != chi.dim() {
            return Err(ToricError::FanMismatch("polytopes live in different dimensions".into()));
        }
        let no: Vec<_> = omega.facets().iter().map(|f| &f.normal).collect();
        let nc: Vec<_> = chi.facets().iter().map(|f| &f.normal).collect();
        if no != nc {
            return Err(ToricError::FanMismatch("facet normal sets differ".into()));
        }
        if omega.face_signature() != chi.face_signature() {
            return Err(ToricError::FanMismatch("face incidences differ".into()));
        }
        let names = (0..no.len()).map(|i| format!("F{i}")).collect();
        Ok(Self { omega, chi, names })
    }

    /// Names facets by their primitive outward normals; unnamed facets keep
    /// the default `F<index>`.
    pub fn with_facet_names(mut self, names: &BTreeMap<Vec<BigInt>, String>) -> Result<Self, ToricError> {
        for (normal, name) in names {
            let i = self
                .omega
                .facets()
                .iter()
                .position(|f| &f.normal == normal)
                .ok_or_else(|| ToricError::FanMismatch(format!("no facet has normal {normal:?} (named {name})")))?;
            self.names[i] = name.clone();
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn omega(&self) -> &RationalPolytope {
        &self.omega
    }

    pub fn chi(&self) -> &RationalPolytope {
        &self.chi
    }

    pub fn faces(&self) -> &[Face] {
        self.omega.faces()
    }

    pub fn face_id(&self, face: &Face) -> String {
        if face.facets.is_empty() {
            WHOLE_SPACE_ID.to_string()
        } else {
            face.facets.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join("&")
        }
    }

    pub fn find_face(&self, id: &str) -> Option<&Face> {
        self.faces().iter().find(|f| self.face_id(f) == id)
    }

    /// Lattice-normalized volume of `j F_omega + l F_chi` in the face's
    /// affine hull.
    fn lattice_volume(&self, face: &Face, j: usize, l: usize) -> Q {
        if j == 0 && l == 0 {
            return Q::zero();
        }
        let d = self.dim();
        let sum = |fs: &[usize]| -> Vec<Vec<Q>> {
            let a: Vec<Vec<Q>> = self.omega.face_points(fs).iter().map(|p| scale(p, &Q::from_integer(j.into()))).collect();
            let b: Vec<Vec<Q>> = self.chi.face_points(fs).iter().map(|p| scale(p, &Q::from_integer(l.into()))).collect();
            minkowski_sum(&a, &b)
        };
        let normal = |f: usize| &self.omega.facets()[f].normal;
        match (d, face.dim) {
            (2, 2) => area2d(&sum(&[])),
            (3, 3) => {
                let mut total = Q::zero();
                for (f, (fo, fc)) in self.omega.facets().iter().zip(self.chi.facets()).enumerate() {
                    let h = &fo.offset * Q::from_integer(j.into()) + &fc.offset * Q::from_integer(l.into());
                    total += h * lattice_area(&sum(&[f]), &fo.normal);
                }
                total / Q::from_integer(3.into())
            }
            (2, 1) => {
                let u = normal(face.facets[0]);
                let dir = vec![-u[1].clone(), u[0].clone()];
                lattice_length(&sum(&face.facets), &dir)
            }
            (3, 2) => lattice_area(&sum(&face.facets), normal(face.facets[0])),
            (3, 1) => {
                let (a, b) = (normal(face.facets[0]), normal(face.facets[1]));
                let cross: Vec<Q> = [
                    &a[1] * &b[2] - &a[2] * &b[1],
                    &a[2] * &b[0] - &a[0] * &b[2],
                    &a[0] * &b[1] - &a[1] * &b[0],
                ]
                .into_iter()
                .map(Q::from_integer)
                .collect();
                lattice_length(&sum(&face.facets), &primitive(&cross))
            }
            _ => Q::zero(),
        }
    }

    /// `int_V Omega^a chi^b` for the subvariety of `face`, `a + b = dim V`:
    /// `m! MV` expanded by polarization over `j F_omega + l F_chi`.
    pub fn intersection_number(&self, face: &Face, a: usize, b: usize) -> Result<Q, ToricError> {
        let m = face.dim;
        if a + b != m {
            return Err(ToricError::ExponentMismatch(format!("a + b = {} but the face has dimension {m}", a + b)));
        }
        if m == 0 {
            return Ok(Q::one());
        }
        let mut total = Q::zero();
        for j in 0..=a {
            for l in 0..=b {
                let term = binom(a, j) * binom(b, l) * self.lattice_volume(face, j, l);
                if (m - j - l) % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
        }
        Ok(total)
    }

    fn whole_space(&self) -> &Face {
        &self.faces()[0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceCriterion {
    pub face_id: String,
    pub dim: usize,
    pub codim: usize,
    /// Whether some coefficient enters this face's inequality.
    pub conditioned: bool,
    #[serde(with = "super::rational")]
    pub lhs: Q,
    pub lhs_float: f64,
    #[serde(with = "super::rational")]
    pub rhs_scale: Q,
    pub rhs_scale_float: f64,
    #[serde(with = "super::rational")]
    pub ratio: Q,
    pub ratio_float: f64,
}

/// The codimension-zero term, reported apart from the face verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WholeSpaceTerm {
    #[serde(with = "super::rational")]
    pub omega_top: Q,
    pub omega_top_float: f64,
    /// `int Omega^n - sum_k c_k int chi^{n-k} Omega^k`, which must equal
    /// `c_0 int chi^n + int f chi^n`.
    #[serde(with = "super::rational")]
    pub compatibility_defect: Q,
    pub compatibility_defect_float: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionReport {
    pub dimension: usize,
    pub coefficients: Vec<String>,
    pub per_face: Vec<FaceCriterion>,
    pub whole_space: WholeSpaceTerm,
    pub pass: bool,
    #[serde(with = "super::rational")]
    pub epsilon_uniform: Q,
    pub epsilon_uniform_float: f64,
    pub worst_face: String,
    pub scope: String,
}

/// Evaluates, on every face of codimension `1..n-1`,
/// `C(n,p) int_V Omega^{n-p} - sum_{k=p}^{n-1} c_k C(k,p) int_V chi^{n-k} Omega^{k-p}`.
/// `coeffs` holds `c_1, ..., c_{n-1}`.
pub fn check_criterion(pair: &ClassPolytopePair, coeffs: &[Q]) -> Result<CriterionReport, ToricError> {
    let n = pair.dim();
    if coeffs.len() != n - 1 {
        return Err(ToricError::Coefficients(format!("expected {} coefficients, got {}", n - 1, coeffs.len())));
    }
    if coeffs.iter().any(Signed::is_negative) {
        return Err(ToricError::Coefficients("coefficients must be non-negative".into()));
    }
    let c = |k: usize| &coeffs[k - 1];
    let proper: Vec<&Face> = pair.faces().iter().filter(|f| f.dim >= 1 && f.dim < n).collect();
    let per_face = proper
        .par_iter()
        .map(|face| -> Result<FaceCriterion, ToricError> {
            let p = n - face.dim;
            let rhs = binom(n, p) * pair.intersection_number(face, n - p, 0)?;
            let mut lhs = rhs.clone();
            for k in p..n {
                if !c(k).is_zero() {
                    lhs -= c(k) * binom(k, p) * pair.intersection_number(face, k - p, n - k)?;
                }
            }
            if !rhs.is_positive() {
                return Err(ToricError::Degenerate(format!("face {} has zero volume", pair.face_id(face))));
            }
            let ratio = &lhs / &rhs;
            Ok(FaceCriterion {
                face_id: pair.face_id(face),
                dim: face.dim,
                codim: p,
                conditioned: (p..n).any(|k| !c(k).is_zero()),
                lhs_float: to_f64(&lhs),
                rhs_scale_float: to_f64(&rhs),
                ratio_float: to_f64(&ratio),
                lhs,
                rhs_scale: rhs,
                ratio,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = pair.whole_space();
    let omega_top = pair.intersection_number(m, n, 0)?;
    let mut defect = omega_top.clone();
    for k in 1..n {
        defect -= c(k) * pair.intersection_number(m, k, n - k)?;
    }
    let mut worst = 0;
    for (i, f) in per_face.iter().enumerate() {
        if f.ratio < per_face[worst].ratio {
            worst = i;
        }
    }
    let epsilon = per_face[worst].ratio.clone();
    Ok(CriterionReport {
        dimension: n,
        coefficients: coeffs.iter().map(format_rational).collect(),
        pass: per_face.iter().all(|f| f.lhs.is_positive()),
        epsilon_uniform_float: to_f64(&epsilon),
        epsilon_uniform: epsilon,
        worst_face: per_face[worst].face_id.clone(),
        whole_space: WholeSpaceTerm {
            omega_top_float: to_f64(&omega_top),
            omega_top,
            compatibility_defect_float: to_f64(&defect),
            compatibility_defect: defect,
        },
        per_face,
        scope: SCOPE_NOTE.to_string(),
    })
}

/// Same as [`check_criterion`] with the binary64 coefficients of a kernel
/// coefficient set, converted exactly.
pub fn check_criterion_with_set(pair: &ClassPolytopePair, coeffs: &CoefficientSet) -> Result<CriterionReport, ToricError> {
    if coeffs.n() != pair.dim() {
        return Err(ToricError::Coefficients(format!("coefficient set is for n = {}, polytopes have n = {}", coeffs.n(), pair.dim())));
    }
    let exact: Vec<Q> = coeffs
        .coefficients()
        .iter()
        .map(|&x| Q::from_float(x).ok_or_else(|| ToricError::Coefficients("non-finite coefficient".into())))
        .collect::<Result<_, _>>()?;
    check_criterion(pair, &exact)
}

/// Smallest face ratio, recomputed from the per-face entries.
pub fn uniform_epsilon(report: &CriterionReport) -> Q {
    report
        .per_face
        .iter()
        .map(|f| &f.lhs / &f.rhs_scale)
        .min()
        .unwrap_or_else(|| report.epsilon_uniform.clone())
}

/// `int Omega^n / int Omega^{n-k} chi^k`.
pub fn jequation_constant(pair: &ClassPolytopePair, k: usize) -> Result<Q, ToricError> {
    let n = pair.dim();
    if k < 1 || k >= n {
        return Err(ToricError::ExponentMismatch(format!("k = {k} must lie in 1..={}", n - 1)));
    }
    let m = pair.whole_space();
    let den = pair.intersection_number(m, n - k, k)?;
    if den.is_zero() {
        return Err(ToricError::Degenerate("mixed intersection number vanishes".into()));
    }
    Ok(pair.intersection_number(m, n, 0)? / den)
}
