/// Result of a restarted GMRES run.
#[derive(Debug, Clone, PartialEq)]
pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub relative_residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Right-preconditioned restarted GMRES for `A x = b`, starting from zero.
/// Solves `A M y = b` and returns `x = M y`.
pub fn gmres(
    apply: impl Fn(&[f64]) -> Vec<f64>,
    precondition: impl Fn(&[f64]) -> Vec<f64>,
    b: &[f64],
    restart: usize,
    max_iterations: usize,
    tol: f64,
) -> GmresOutcome {
    let size = b.len();
    let b_norm = norm(b);
    let mut x = vec![0.0; size];
    if b_norm == 0.0 {
        return GmresOutcome {
            x,
            relative_residual: 0.0,
            iterations: 0,
        };
    }
    let mut iterations = 0;
    let mut rel = 1.0;
    while iterations < max_iterations {
        let ax = apply(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let beta = norm(&r);
        rel = beta / b_norm;
        if rel <= tol {
            break;
        }
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut hess: Vec<Vec<f64>> = Vec::new();
        let mut cs: Vec<f64> = Vec::new();
        let mut sn: Vec<f64> = Vec::new();
        let mut g = vec![beta];
        let mut steps = 0;
        for j in 0..restart {
            if iterations >= max_iterations {
                break;
            }
            iterations += 1;
            steps = j + 1;
            let z = precondition(&basis[j]);
            let mut w = apply(&z);
            let mut h = vec![0.0; j + 2];
            for (i, v) in basis.iter().enumerate() {
                h[i] = dot(&w, v);
                for (wk, vk) in w.iter_mut().zip(v) {
                    *wk -= h[i] * vk;
                }
            }
            // one reorthogonalization pass
            for (i, v) in basis.iter().enumerate() {
                let c = dot(&w, v);
                h[i] += c;
                for (wk, vk) in w.iter_mut().zip(v) {
                    *wk -= c * vk;
                }
            }
            h[j + 1] = norm(&w);
            for i in 0..j {
                let t = cs[i] * h[i] + sn[i] * h[i + 1];
                h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
                h[i] = t;
            }
            let denom = h[j].hypot(h[j + 1]);
            let (c, s) = if denom == 0.0 { (1.0, 0.0) } else { (h[j] / denom, h[j + 1] / denom) };
            cs.push(c);
            sn.push(s);
            h[j] = c * h[j] + s * h[j + 1];
            let next_norm = h[j + 1];
            h[j + 1] = 0.0;
            g.push(-s * g[j]);
            g[j] *= c;
            hess.push(h);
            rel = g[j + 1].abs() / b_norm;
            if rel <= tol || next_norm == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / next_norm).collect());
        }
        // back substitution
        let mut y = vec![0.0; steps];
        for i in (0..steps).rev() {
            let mut s = g[i];
            for k in i + 1..steps {
                s -= hess[k][i] * y[k];
            }
            y[i] = s / hess[i][i];
        }
        let mut update = vec![0.0; size];
        for (yi, v) in y.iter().zip(&basis) {
            for (u, vk) in update.iter_mut().zip(v) {
                *u += yi * vk;
            }
        }
        let dx = precondition(&update);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
        if rel <= tol {
            let ax = apply(&x);
            let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
            rel = norm(&r) / b_norm;
            if rel <= tol * 10.0 {
                break;
            }
        }
    }
    GmresOutcome {
        x,
        relative_residual: rel,
        iterations,
    }
}
