use nalgebra::{DMatrix, DVector};

use super::{Complex64, PshError};

const FD_STEP: f64 = 1e-4;

/// A real function on `C^n = R^{2n}` (coordinates `x_1, y_1, x_2, y_2, ...`).
pub trait Potential: Sync {
    fn real_dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Closed box `(lo, hi)` the potential is sampled on; `None` means all of space.
    fn domain(&self) -> Option<(&[f64], &[f64])> {
        None
    }

    /// `(gamma, center)` when the potential is `gamma log|z - center|^2 + smooth`.
    fn log_singularity(&self) -> Option<(f64, &[f64])> {
        None
    }

    /// The part left after removing the log singularity.
    fn smooth_value(&self, x: &[f64]) -> f64 {
        self.value(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let d = self.real_dim();
        let mut g = vec![0.0; d];
        let mut p = x.to_vec();
        for a in 0..d {
            p[a] = x[a] + FD_STEP;
            let up = self.value(&p);
            p[a] = x[a] - FD_STEP;
            let down = self.value(&p);
            p[a] = x[a];
            g[a] = (up - down) / (2.0 * FD_STEP);
        }
        g
    }

    fn real_hessian(&self, x: &[f64]) -> DMatrix<f64> {
        fd_hessian(&|p| self.value(p), self.real_dim(), x)
    }

    /// `(d_j dbar_k phi)`, an `n x n` Hermitian matrix.
    fn complex_hessian(&self, x: &[f64]) -> DMatrix<Complex64> {
        complex_from_real(&self.real_hessian(x))
    }
}

/// `d_j dbar_k phi = (phi_{x_j x_k} + phi_{y_j y_k} + i(phi_{x_j y_k} - phi_{y_j x_k})) / 4`.
pub fn complex_from_real(h: &DMatrix<f64>) -> DMatrix<Complex64> {
    let n = h.nrows() / 2;
    DMatrix::from_fn(n, n, |j, k| {
        let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
        Complex64::new(
            0.25 * (h[(xj, xk)] + h[(yj, yk)]),
            0.25 * (h[(xj, yk)] - h[(yj, xk)]),
        )
    })
}

/// Real Hessian of `sum_{jk} a_{jk} z_j conj(z_k)` for Hermitian `a`.
pub fn real_from_complex(a: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut h = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let (re, im) = (a[(j, k)].re, a[(j, k)].im);
            h[(2 * j, 2 * k)] = 2.0 * re;
            h[(2 * j + 1, 2 * k + 1)] = 2.0 * re;
            h[(2 * j, 2 * k + 1)] = 2.0 * im;
            h[(2 * j + 1, 2 * k)] = -2.0 * im;
        }
    }
    h
}

fn check_dim(d: usize) -> Result<usize, PshError> {
    if d == 0 || d % 2 != 0 {
        return Err(PshError::Domain(format!("real dimension {d} is not even and positive")));
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantPotential {
    pub dim: usize,
    pub value: f64,
}

impl Potential for ConstantPotential {
    fn real_dim(&self) -> usize {
        self.dim
    }
    fn value(&self, _x: &[f64]) -> f64 {
        self.value
    }
    fn gradient(&self, _x: &[f64]) -> Vec<f64> {
        vec![0.0; self.dim]
    }
    fn real_hessian(&self, _x: &[f64]) -> DMatrix<f64> {
        DMatrix::zeros(self.dim, self.dim)
    }
}

/// `x^T A x / 2 + b.x + c` with symmetric `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPotential {
    a: DMatrix<f64>,
    b: DVector<f64>,
    c: f64,
}

impl QuadraticPotential {
    pub fn new(a: DMatrix<f64>, b: Vec<f64>, c: f64) -> Result<Self, PshError> {
        let d = check_dim(a.nrows())?;
        if a.ncols() != d || b.len() != d {
            return Err(PshError::Domain("quadratic data has inconsistent sizes".into()));
        }
        let a = (&a + a.transpose()) * 0.5;
        Ok(Self {
            a,
            b: DVector::from_vec(b),
            c,
        })
    }

    /// `sum_{jk} h_{jk} z_j conj(z_k) + c`, whose complex Hessian is `h`.
    pub fn hermitian(h: &DMatrix<Complex64>, c: f64) -> Result<Self, PshError> {
        let d = 2 * h.nrows();
        Self::new(real_from_complex(h), vec![0.0; d], c)
    }

    /// `sum_j w_j |z_j|^2`.
    pub fn diagonal(weights: &[f64]) -> Self {
        let h = DMatrix::from_fn(weights.len(), weights.len(), |j, k| {
            Complex64::new(if j == k { weights[j] } else { 0.0 }, 0.0)
        });
        Self::hermitian(&h, 0.0).expect("diagonal weights")
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.c = c;
        self
    }
}

impl Potential for QuadraticPotential {
    fn real_dim(&self) -> usize {
        self.b.len()
    }
    fn value(&self, x: &[f64]) -> f64 {
        let v = DVector::from_column_slice(x);
        0.5 * v.dot(&(&self.a * &v)) + self.b.dot(&v) + self.c
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(x);
        (&self.a * v + &self.b).as_slice().to_vec()
    }
    fn real_hessian(&self, _x: &[f64]) -> DMatrix<f64> {
        self.a.clone()
    }
}

type ValueFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type HessFn = Box<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

/// A potential given by closures; the Hessian falls back to finite differences.
pub struct FnPotential {
    dim: usize,
    value: ValueFn,
    hessian: Option<HessFn>,
    domain: Option<(Vec<f64>, Vec<f64>)>,
}

impl FnPotential {
    pub fn new(dim: usize, value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Result<Self, PshError> {
        Ok(Self {
            dim: check_dim(dim)?,
            value: Box::new(value),
            hessian: None,
            domain: None,
        })
    }

    /// Restrict to the box `[lo, hi]`.
    pub fn with_domain(mut self, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, PshError> {
        if lo.len() != self.dim || hi.len() != self.dim || lo.iter().zip(&hi).any(|(l, h)| !(h > l)) {
            return Err(PshError::Domain("box does not match the dimension or is empty".into()));
        }
        self.domain = Some((lo, hi));
        Ok(self)
    }

    pub fn with_hessian(mut self, h: impl Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static) -> Self {
        self.hessian = Some(Box::new(h));
        self
    }
}

impl Potential for FnPotential {
    fn real_dim(&self) -> usize {
        self.dim
    }
    fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }
    fn domain(&self) -> Option<(&[f64], &[f64])> {
        self.domain.as_ref().map(|(l, h)| (l.as_slice(), h.as_slice()))
    }
    fn real_hessian(&self, x: &[f64]) -> DMatrix<f64> {
        match &self.hessian {
            Some(h) => h(x),
            None => fd_hessian(&|p| (self.value)(p), self.dim, x),
        }
    }
}

/// Central-difference Hessian with step `1e-4`.
pub fn fd_hessian(f: &dyn Fn(&[f64]) -> f64, d: usize, x: &[f64]) -> DMatrix<f64> {
    let h = FD_STEP;
    let mut out = DMatrix::zeros(d, d);
    let mut p = x.to_vec();
    let f0 = f(x);
    for a in 0..d {
        p[a] = x[a] + h;
        let up = f(&p);
        p[a] = x[a] - h;
        let down = f(&p);
        p[a] = x[a];
        out[(a, a)] = (up - 2.0 * f0 + down) / (h * h);
        for b in 0..a {
            let mut at = |sa: f64, sb: f64| {
                p[a] = x[a] + sa * h;
                p[b] = x[b] + sb * h;
                let v = f(&p);
                p[a] = x[a];
                p[b] = x[b];
                v
            };
            let v = (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * h * h);
            out[(a, b)] = v;
            out[(b, a)] = v;
        }
    }
    out
}

/// Samples on a regular grid over a box in `R^{2n}`, multilinearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPotential {
    lo: Vec<f64>,
    hi: Vec<f64>,
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl SampledPotential {
    /// `values` in row-major order, the last axis fastest; node `i` of axis
    /// `a` sits at `lo[a] + i (hi[a] - lo[a]) / (shape[a] - 1)`.
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, shape: Vec<usize>, values: Vec<f64>) -> Result<Self, PshError> {
        let d = check_dim(shape.len())?;
        if lo.len() != d || hi.len() != d {
            return Err(PshError::Domain("box corners do not match the grid dimension".into()));
        }
        if shape.iter().any(|&s| s < 2) || lo.iter().zip(&hi).any(|(l, h)| !(h > l)) {
            return Err(PshError::Domain("grid needs at least two nodes per axis and a non-empty box".into()));
        }
        if shape.iter().product::<usize>() != values.len() {
            return Err(PshError::Domain("value count does not match grid shape".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PshError::Domain("grid samples must be finite".into()));
        }
        Ok(Self { lo, hi, shape, values })
    }

    pub fn from_fn(lo: Vec<f64>, hi: Vec<f64>, shape: Vec<usize>, f: impl Fn(&[f64]) -> f64) -> Result<Self, PshError> {
        let count: usize = shape.iter().product();
        let d = shape.len();
        let mut values = Vec::with_capacity(count);
        let mut p = vec![0.0; d];
        for i in 0..count {
            let mut rest = i;
            for a in (0..d).rev() {
                let k = rest % shape[a];
                rest /= shape[a];
                p[a] = lo[a] + k as f64 * (hi[a] - lo[a]) / (shape[a] - 1) as f64;
            }
            values.push(f(&p));
        }
        Self::new(lo, hi, shape, values)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }
}

impl Potential for SampledPotential {
    fn real_dim(&self) -> usize {
        self.shape.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let d = self.shape.len();
        let mut base = vec![0usize; d];
        let mut frac = vec![0.0; d];
        for a in 0..d {
            let cells = (self.shape[a] - 1) as f64;
            let s = ((x[a] - self.lo[a]) / (self.hi[a] - self.lo[a]) * cells).clamp(0.0, cells);
            let i = (s.floor() as usize).min(self.shape[a] - 2);
            base[a] = i;
            frac[a] = s - i as f64;
        }
        let mut total = 0.0;
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            let mut idx = 0;
            for a in 0..d {
                let bit = (corner >> (d - 1 - a)) & 1;
                w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
                idx = idx * self.shape[a] + base[a] + bit;
            }
            if w != 0.0 {
                total += w * self.values[idx];
            }
        }
        total
    }

    fn domain(&self) -> Option<(&[f64], &[f64])> {
        Some((&self.lo, &self.hi))
    }
}

/// `gamma log|z - center|^2 + smooth(z)`.
pub struct SingularPotential {
    gamma: f64,
    center: Vec<f64>,
    smooth: Box<dyn Potential>,
}

impl SingularPotential {
    pub fn new(gamma: f64, center: Vec<f64>, smooth: Box<dyn Potential>) -> Result<Self, PshError> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(PshError::Domain("gamma must be finite and non-negative".into()));
        }
        if center.len() != smooth.real_dim() {
            return Err(PshError::Domain("center does not match the dimension".into()));
        }
        Ok(Self { gamma, center, smooth })
    }

    /// `gamma log|z - center|^2` alone.
    pub fn pure(gamma: f64, center: Vec<f64>) -> Result<Self, PshError> {
        let dim = check_dim(center.len())?;
        Self::new(gamma, center, Box::new(ConstantPotential { dim, value: 0.0 }))
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn smooth(&self) -> &dyn Potential {
        self.smooth.as_ref()
    }

    pub fn distance_to_center(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

impl Potential for SingularPotential {
    fn real_dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let r = self.distance_to_center(x);
        let log = if self.gamma == 0.0 { 0.0 } else { self.gamma * (r * r).ln() };
        log + self.smooth.value(x)
    }

    fn domain(&self) -> Option<(&[f64], &[f64])> {
        self.smooth.domain()
    }

    fn log_singularity(&self) -> Option<(f64, &[f64])> {
        Some((self.gamma, &self.center))
    }

    fn smooth_value(&self, x: &[f64]) -> f64 {
        self.smooth.value(x)
    }
}
