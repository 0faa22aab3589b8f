//! Elementary symmetric polynomials and their deleted variants.

use super::KernelError;

/// All elementary symmetric polynomials `e_0..=e_n` of `values`, by
/// expanding `prod (1 + t * v_i)` one factor at a time.
pub fn elem_sym_all(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (m, &v) in values.iter().enumerate() {
        for j in (1..=m + 1).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e
}

/// `S_k(values)`, the coefficient of `t^k` in `det(I + t diag(values))`.
pub fn elem_sym(values: &[f64], k: usize) -> Result<f64, KernelError> {
    if k > values.len() {
        return Err(KernelError::Domain(format!(
            "elem_sym: k = {k} exceeds arity {}",
            values.len()
        )));
    }
    Ok(elem_sym_all(values)[k])
}

/// `S_{k;i}` (and `S_{k;i,j}` when `j` is given): the symmetric polynomial
/// of the entries with index `i` (and `j`) removed. `S_{k;i,i}` is zero by
/// convention.
pub fn elem_sym_deleted(
    values: &[f64],
    k: usize,
    i: usize,
    j: Option<usize>,
) -> Result<f64, KernelError> {
    let n = values.len();
    if i >= n || j.is_some_and(|j| j >= n) {
        return Err(KernelError::Domain(format!(
            "elem_sym_deleted: index out of range for arity {n}"
        )));
    }
    if j == Some(i) {
        return Ok(0.0);
    }
    let remaining = if j.is_some() { n - 2 } else { n - 1 };
    if k > remaining {
        return Err(KernelError::Domain(format!(
            "elem_sym_deleted: k = {k} exceeds remaining arity {remaining}"
        )));
    }
    let kept: Vec<f64> = values
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != i && Some(m) != j)
        .map(|(_, &v)| v)
        .collect();
    Ok(elem_sym_all(&kept)[k])
}

/// `e_0..=e_{n-1}` of `values` with index `i` removed, for every `i`.
pub(crate) fn deleted_tables(values: &[f64]) -> Vec<Vec<f64>> {
    (0..values.len())
        .map(|i| {
            let kept: Vec<f64> = values
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != i)
                .map(|(_, &v)| v)
                .collect();
            elem_sym_all(&kept)
        })
        .collect()
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n as u64, k as u64) as f64
}
