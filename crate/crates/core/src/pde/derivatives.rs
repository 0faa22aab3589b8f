//! Second derivatives on the periodic grid as Fourier multipliers.
//!
//! Both schemes are diagonal in Fourier space: the spectral one uses the
//! exact symbols `-(2 pi k)^2` and `-(2 pi)^2 k_a k_b` (mixed terms drop the
//! Nyquist mode), the finite-difference one the symbols of the centered
//! three-point and four-point stencils.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::geometry::{Scheme, TorusGeometry};

pub struct Differentiator {
    shape: Vec<usize>,
    total: usize,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
    pairs: Vec<(usize, usize)>,
    multipliers: Vec<Vec<f64>>,
}

impl std::fmt::Debug for Differentiator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Differentiator").field("shape", &self.shape).finish()
    }
}

fn axis_symbols(size: usize, scheme: Scheme) -> (Vec<f64>, Vec<f64>) {
    let nf = size as f64;
    let mut pure = Vec::with_capacity(size);
    let mut first = Vec::with_capacity(size);
    for m in 0..size {
        match scheme {
            Scheme::Spectral => {
                let k = if m <= size / 2 { m as f64 } else { m as f64 - nf };
                pure.push(-(2.0 * PI * k).powi(2));
                first.push(if 2 * m == size { 0.0 } else { 2.0 * PI * k });
            }
            Scheme::FiniteDifference => {
                let theta = 2.0 * PI * m as f64 / nf;
                pure.push((2.0 * theta.cos() - 2.0) * nf * nf);
                first.push(theta.sin() * nf);
            }
        }
    }
    (pure, first)
}

impl Differentiator {
    pub fn new(geom: &TorusGeometry) -> Self {
        let shape = geom.shape().to_vec();
        let n = shape.len();
        let total: usize = shape.iter().product();
        let mut planner = FftPlanner::<f64>::new();
        let forward = shape.iter().map(|&s| planner.plan_fft_forward(s)).collect();
        let inverse = shape.iter().map(|&s| planner.plan_fft_inverse(s)).collect();
        let symbols: Vec<(Vec<f64>, Vec<f64>)> =
            shape.iter().map(|&s| axis_symbols(s, geom.scheme())).collect();

        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a..n {
                pairs.push((a, b));
            }
        }
        let multipliers = pairs
            .iter()
            .map(|&(a, b)| {
                (0..total)
                    .map(|idx| {
                        let m = multi_index(&shape, idx);
                        if a == b {
                            symbols[a].0[m[a]]
                        } else {
                            -symbols[a].1[m[a]] * symbols[b].1[m[b]]
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            shape,
            total,
            forward,
            inverse,
            pairs,
            multipliers,
        }
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Index pairs `(a, b)` with `a <= b`, in the order used by [`Self::hessian`].
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.pairs.iter().position(|&p| p == (a, b)).expect("valid axes")
    }

    pub fn multiplier(&self, pair: usize) -> &[f64] {
        &self.multipliers[pair]
    }

    fn transform(&self, buf: &mut [Complex64], inverse: bool) {
        let n = self.shape.len();
        let mut scratch = vec![Complex64::new(0.0, 0.0); self.total];
        for a in 0..n {
            let len = self.shape[a];
            let stride: usize = self.shape[a + 1..].iter().product();
            let outer = self.total / (len * stride);
            let mut line = 0;
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * len * stride + s;
                    for j in 0..len {
                        scratch[line * len + j] = buf[base + j * stride];
                    }
                    line += 1;
                }
            }
            let plan = if inverse { &self.inverse[a] } else { &self.forward[a] };
            plan.process(&mut scratch);
            let mut line = 0;
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * len * stride + s;
                    for j in 0..len {
                        buf[base + j * stride] = scratch[line * len + j];
                    }
                    line += 1;
                }
            }
        }
    }

    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform(&mut buf, false);
        buf
    }

    /// Inverse transform, normalized, keeping the real part.
    pub fn inverse_real(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        self.transform(&mut spec, true);
        let scale = 1.0 / self.total as f64;
        spec.iter().map(|c| c.re * scale).collect()
    }

    /// Second derivative `d_a d_b` from a forward transform.
    pub fn second_from_spectrum(&self, spec: &[Complex64], pair: usize) -> Vec<f64> {
        let mult = &self.multipliers[pair];
        let scaled: Vec<Complex64> = spec.iter().zip(mult).map(|(c, m)| c * m).collect();
        self.inverse_real(scaled)
    }

    /// All second derivatives, one field per entry of [`Self::pairs`].
    pub fn hessian(&self, values: &[f64]) -> Vec<Vec<f64>> {
        let spec = self.forward(values);
        (0..self.pairs.len())
            .map(|p| self.second_from_spectrum(&spec, p))
            .collect()
    }

    /// Symbol of `sum_p weights[p] * D_p` (off-diagonal weights should
    /// already include the factor 2 from symmetry).
    pub fn combined_symbol(&self, weights: &[f64]) -> Vec<f64> {
        (0..self.total)
            .map(|i| {
                weights
                    .iter()
                    .zip(&self.multipliers)
                    .map(|(w, m)| w * m[i])
                    .sum()
            })
            .collect()
    }

    /// Mean-zero solution of `sum_p weights[p] D_p psi = rhs - mean(rhs)`.
    pub fn solve_constant(&self, symbol: &[f64], rhs: &[f64]) -> Vec<f64> {
        let spec = self.forward(rhs);
        let scaled: Vec<Complex64> = spec
            .iter()
            .zip(symbol)
            .enumerate()
            .map(|(i, (c, s))| {
                if i == 0 || s.abs() < 1e-300 {
                    Complex64::new(0.0, 0.0)
                } else {
                    c / s
                }
            })
            .collect();
        self.inverse_real(scaled)
    }
}

fn multi_index(shape: &[usize], mut idx: usize) -> Vec<usize> {
    let mut m = vec![0; shape.len()];
    for a in (0..shape.len()).rev() {
        m[a] = idx % shape[a];
        idx /= shape[a];
    }
    m
}
