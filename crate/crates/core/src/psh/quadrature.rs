//! Gauss-Legendre rules, adaptive subdivision, and a product rule for the
//! unit sphere of `C^n`.

use std::f64::consts::PI;

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(m, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

/// `P_m(x)` and `P_m'(x)` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A fixed rule mapped to `[a, b]`.
#[derive(Debug, Clone)]
pub struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    pub fn new(m: usize) -> Self {
        let (nodes, weights) = gauss_legendre(m);
        Self { nodes, weights }
    }

    /// Nodes and weights on `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        self.on(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// Adaptive bisection with a 15-point rule, to absolute tolerance `tol`
/// (scaled by the magnitude of the integral when that exceeds one).
pub fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let rule = Rule::new(15);
    let whole = rule.integrate(f, a, b);
    refine(f, &rule, a, b, whole, tol, 0)
}

fn refine(f: &dyn Fn(f64) -> f64, rule: &Rule, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> f64 {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let both = left + right;
    if (both - whole).abs() <= tol * whole.abs().max(1.0) || depth >= 40 {
        return both;
    }
    refine(f, rule, a, mid, left, 0.5 * tol, depth + 1) + refine(f, rule, mid, b, right, 0.5 * tol, depth + 1)
}

/// Resolution of the product rules used for ball averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub radial: usize,
    pub simplex: usize,
    pub angular: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            radial: 24,
            simplex: 8,
            angular: 16,
        }
    }
}

impl Resolution {
    pub fn coarse() -> Self {
        Self {
            radial: 12,
            simplex: 6,
            angular: 12,
        }
    }
}

/// Points of the unit sphere in `C^n = R^{2n}` (coordinates ordered
/// `x_1, y_1, x_2, y_2, ...`) with weights summing to one.
///
/// Writes `z_j = sqrt(u_j) e^{i a_j}` with `u` uniform on the simplex and the
/// angles uniform; this parametrization carries the uniform measure.
pub fn sphere_rule(n: usize, res: Resolution) -> Vec<(Vec<f64>, f64)> {
    let angular = if n == 1 { res.angular.max(32) } else { res.angular };
    let angles: Vec<f64> = (0..angular).map(|k| 2.0 * PI * k as f64 / angular as f64).collect();
    let simplex = simplex_rule(n, res.simplex);
    let mut out = Vec::new();
    for (u, wu) in &simplex {
        let mut idx = vec![0usize; n];
        loop {
            let mut p = vec![0.0; 2 * n];
            for j in 0..n {
                let r = u[j].max(0.0).sqrt();
                let a = angles[idx[j]];
                p[2 * j] = r * a.cos();
                p[2 * j + 1] = r * a.sin();
            }
            out.push((p, wu / (angular as f64).powi(n as i32)));
            let mut j = 0;
            loop {
                if j == n {
                    break;
                }
                idx[j] += 1;
                if idx[j] < angular {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == n {
                break;
            }
        }
    }
    out
}

/// Probability rule for the uniform distribution on the standard simplex
/// `{u >= 0, sum u = 1}` in `R^n`, by stick breaking.
pub fn simplex_rule(n: usize, m: usize) -> Vec<(Vec<f64>, f64)> {
    if n == 1 {
        return vec![(vec![1.0], 1.0)];
    }
    let rule = Rule::new(m);
    let pts: Vec<(f64, f64)> = rule.on(0.0, 1.0).collect();
    let dims = n - 1;
    let factorial: f64 = (1..=dims).map(|v| v as f64).product();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dims];
    loop {
        let mut u = vec![0.0; n];
        let mut rest = 1.0;
        let mut w = factorial;
        for (j, &i) in idx.iter().enumerate() {
            let (a, wa) = pts[i];
            u[j] = rest * a;
            // Jacobian of the stick-breaking map
            w *= wa * rest;
            rest *= 1.0 - a;
        }
        u[n - 1] = rest;
        out.push((u, w));
        let mut j = 0;
        loop {
            if j == dims {
                break;
            }
            idx[j] += 1;
            if idx[j] < m {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == dims {
            break;
        }
    }
    out
}
