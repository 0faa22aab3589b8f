use nalgebra::DMatrix;

use super::coefficients::check_positive;
use super::{binomial_f64, elem_sym_all, KernelError};

/// Density `Omega^k chi^{n-k} / chi^n` of two constant forms with real
/// symmetric coefficient matrices `a` (for `Omega`) and `x` (for `chi`),
/// computed from the mixed discriminant by summing over all pairs of
/// permutations. Independent of any eigenvalue computation.
pub fn wedge_density_oracle(a: &DMatrix<f64>, x: &DMatrix<f64>, k: usize) -> Result<f64, KernelError> {
    let n = a.nrows();
    if n > 4 {
        return Err(KernelError::Domain(format!(
            "wedge_density_oracle supports n <= 4, got {n}"
        )));
    }
    if a.ncols() != n || x.nrows() != n || x.ncols() != n || k > n {
        return Err(KernelError::Domain("wedge_density_oracle: shape mismatch".into()));
    }
    let slots: Vec<&DMatrix<f64>> = (0..n).map(|s| if s < k { a } else { x }).collect();
    let perms = permutations(n);
    let mut mixed = 0.0;
    for (sigma, s_sign) in &perms {
        for (tau, t_sign) in &perms {
            let mut prod = (s_sign * t_sign) as f64;
            for (slot, m) in slots.iter().enumerate() {
                prod *= m[(sigma[slot], tau[slot])];
            }
            mixed += prod;
        }
    }
    let factorial: f64 = (1..=n).map(|v| v as f64).product();
    mixed /= factorial;

    let mut det_x = 0.0;
    for (sigma, sign) in &perms {
        det_x += *sign as f64 * (0..n).map(|i| x[(i, sigma[i])]).product::<f64>();
    }
    if det_x <= 0.0 {
        return Err(KernelError::Domain("chi must be positive definite".into()));
    }
    Ok(mixed / det_x)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, 1, &mut out);
    out
}

fn permute(current: &mut Vec<usize>, start: usize, sign: i32, out: &mut Vec<(Vec<usize>, i32)>) {
    if start == current.len() {
        out.push((current.clone(), sign));
        return;
    }
    for i in start..current.len() {
        current.swap(start, i);
        let s = if i == start { sign } else { -sign };
        permute(current, start + 1, s, out);
        current.swap(start, i);
    }
}

/// Maclaurin means `m_k = (S_k / C(n,k))^{1/k}`, `k = 1..n`; non-increasing in `k`.
pub fn maclaurin_chain(lambda: &[f64]) -> Result<Vec<f64>, KernelError> {
    check_positive(lambda)?;
    let n = lambda.len();
    let e = elem_sym_all(lambda);
    Ok((1..=n)
        .map(|k| (e[k] / binomial_f64(n, k)).powf(1.0 / k as f64))
        .collect())
}
