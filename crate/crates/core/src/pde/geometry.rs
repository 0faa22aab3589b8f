use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::PdeError;

/// How second derivatives are taken on the periodic grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Scheme {
    /// Trigonometric interpolation.
    #[default]
    Spectral,
    /// Centered second-order differences.
    FiniteDifference,
}

/// Constant forms `X` (for `chi`) and `W0` (for `Omega_0`) on the real torus
/// `[0,1)^n`, sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusGeometry {
    shape: Vec<usize>,
    x: DMatrix<f64>,
    w0: DMatrix<f64>,
    linv: DMatrix<f64>,
    scheme: Scheme,
}

fn check_spd(name: &str, m: &DMatrix<f64>, n: usize) -> Result<DMatrix<f64>, PdeError> {
    if m.nrows() != n || m.ncols() != n {
        return Err(PdeError::Data(format!("{name} must be {n}x{n}")));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(PdeError::Data(format!("{name} has non-finite entries")));
    }
    let scale = m.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    for i in 0..n {
        for j in 0..i {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return Err(PdeError::Data(format!("{name} is not symmetric")));
            }
        }
    }
    let sym = (m + m.transpose()) * 0.5;
    if sym.clone().cholesky().is_none() {
        return Err(PdeError::Data(format!("{name} is not positive definite")));
    }
    Ok(sym)
}

impl TorusGeometry {
    pub fn new(shape: Vec<usize>, x: DMatrix<f64>, w0: DMatrix<f64>) -> Result<Self, PdeError> {
        let n = shape.len();
        if !(1..=3).contains(&n) {
            return Err(PdeError::Data(format!("torus dimension must be 1..=3, got {n}")));
        }
        if let Some(&s) = shape.iter().find(|&&s| s < 8 || s % 2 != 0) {
            return Err(PdeError::Data(format!("grid sizes must be even and >= 8, got {s}")));
        }
        let x = check_spd("X", &x, n)?;
        let w0 = check_spd("W0", &w0, n)?;
        let linv = x
            .clone()
            .cholesky()
            .expect("checked positive definite")
            .l()
            .try_inverse()
            .expect("triangular factor is invertible");
        Ok(Self {
            shape,
            x,
            w0,
            linv,
            scheme: Scheme::Spectral,
        })
    }

    /// `X = W0 = I` on an `n`-dimensional grid of side `size`.
    pub fn identity(n: usize, size: usize) -> Result<Self, PdeError> {
        Self::new(vec![size; n], DMatrix::identity(n, n), DMatrix::identity(n, n))
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    /// Same torus and `chi`, with `Omega_0` replaced by `factor * Omega_0`.
    pub fn with_scaled_w0(&self, factor: f64) -> Result<Self, PdeError> {
        let mut g = self.clone();
        g.w0 = &self.w0 * factor;
        check_spd("W0", &g.w0, self.n())?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn w0(&self) -> &DMatrix<f64> {
        &self.w0
    }

    /// Inverse of the Cholesky factor `L` of `X`.
    pub fn chol_inverse(&self) -> &DMatrix<f64> {
        &self.linv
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Coordinates in `[0,1)^n` of the point with row-major index `index`.
    pub fn point(&self, index: usize) -> Vec<f64> {
        let mut rest = index;
        let mut coords = vec![0.0; self.n()];
        for a in (0..self.n()).rev() {
            let s = self.shape[a];
            coords[a] = (rest % s) as f64 / s as f64;
            rest /= s;
        }
        coords
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// A periodic potential sampled on the grid, kept at mean zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PotentialField {
    pub shape: Vec<usize>,
    pub values: Vec<f64>,
}

impl PotentialField {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self, PdeError> {
        if shape.iter().product::<usize>() != values.len() {
            return Err(PdeError::Data(format!(
                "grid of shape {shape:?} needs {} values, got {}",
                shape.iter().product::<usize>(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PdeError::Data("potential has non-finite values".into()));
        }
        Ok(Self { shape, values })
    }

    pub fn zeros(geom: &TorusGeometry) -> Self {
        Self {
            shape: geom.shape().to_vec(),
            values: vec![0.0; geom.len()],
        }
    }

    pub fn from_fn(geom: &TorusGeometry, f: impl Fn(&[f64]) -> f64) -> Self {
        Self {
            shape: geom.shape().to_vec(),
            values: (0..geom.len()).map(|i| f(&geom.point(i))).collect(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn project_mean_zero(&mut self) {
        let m = self.mean();
        for v in &mut self.values {
            *v -= m;
        }
    }

    pub fn mean_zero(mut self) -> Self {
        self.project_mean_zero();
        self
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Sup distance after removing both means.
    pub fn distance_mod_constants(&self, other: &PotentialField) -> f64 {
        let ma = self.mean();
        let mb = other.mean();
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |a, (x, y)| a.max(((x - ma) - (y - mb)).abs()))
    }
}
