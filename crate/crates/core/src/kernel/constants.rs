//! Explicit constants: the lower bound `f_m`, the eigenvalue `K`, restricted
//! coefficients on subvarieties and the binomial identities behind them.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{binomial, binomial_f64, CoefficientSet, KernelError, Regime};

/// `K` is taken as this fraction of `min(1, smallest eigenvalue of sum E_I)`.
pub const K_SAFETY_FACTOR: f64 = 0.99;

/// The five entries inside the minimum defining `f_m`, and `f_m` itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FmBudget {
    pub term_garding: f64,
    pub term_quadratic: f64,
    pub term_power: f64,
    pub term_class_ratio: f64,
    pub term_k: f64,
    /// Smallest eigenvalue of `sum_{|I| = zeta} E_I`.
    pub min_eig: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub fm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictedCoefficients {
    /// Dimension of the subvariety.
    pub m: usize,
    /// `b_0..b_{m-1}`.
    pub b: Vec<f64>,
}

/// Smallest eigenvalue of `sum_{|I| = zeta} E_I`, where `(E_I)_{ij} = 1`
/// iff `i, j` are both outside `I`. Built by enumerating every subset.
pub fn min_eig_ei(n: usize, zeta: usize) -> Result<f64, KernelError> {
    if zeta == 0 || zeta >= n || n > 20 {
        return Err(KernelError::Domain(format!(
            "min_eig_ei: need 1 <= zeta <= n-1 (n <= 20), got n = {n}, zeta = {zeta}"
        )));
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != zeta {
            continue;
        }
        let outside: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        for &i in &outside {
            for &j in &outside {
                m[(i, j)] += 1.0;
            }
        }
    }
    let eig = SymmetricEigen::new(m);
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// `f_m = -min(...)` for a `PositiveSum` instance with
/// `class_ratio = int Omega_0^n / int chi^n`.
pub fn compute_fm(coeffs: &CoefficientSet, class_ratio: f64) -> Result<FmBudget, KernelError> {
    if coeffs.regime() == Regime::AllZeroPositiveF {
        return Err(KernelError::State(
            "f_m is undefined when every c_k vanishes; f must be positive".into(),
        ));
    }
    if !(class_ratio.is_finite() && class_ratio > 0.0) {
        return Err(KernelError::Domain(format!(
            "class ratio must be positive, got {class_ratio}"
        )));
    }
    let n = coeffs.n();
    let zeta = coeffs.zeta().expect("PositiveSum has a largest nonzero coefficient");
    let nf = n as f64;
    let z = zeta as f64;
    let cz = coeffs.c(zeta);
    let gap = nf - z;

    let min_eig = min_eig_ei(n, zeta)?;
    let k = K_SAFETY_FACTOR * min_eig.min(1.0);

    let term_garding = (z * cz / (2.0 * nf)).powf(z / gap) * cz * gap / (2.0 * nf) / (16.0 * nf);
    let term_quadratic = z * cz * cz / (4.0 * nf);
    let term_power = cz.powf(nf / gap) / (4.0 * nf);
    let term_class_ratio = class_ratio / 4.0;
    let term_k = k / (2.0 * nf) * (cz / (2.0 * binomial_f64(n, zeta))).powf(nf / gap);

    let smallest = [term_garding, term_quadratic, term_power, term_class_ratio, term_k]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(FmBudget {
        term_garding,
        term_quadratic,
        term_power,
        term_class_ratio,
        term_k,
        min_eig,
        k,
        fm: -smallest,
    })
}

/// `b_j = c_{j+n-m} C(j+n-m, n-m) / C(n, m)` for an `m`-dimensional subvariety.
pub fn restricted_coefficients(
    coeffs: &CoefficientSet,
    m: usize,
) -> Result<RestrictedCoefficients, KernelError> {
    let n = coeffs.n();
    if m == 0 || m >= n {
        return Err(KernelError::Domain(format!(
            "restricted coefficients need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let b = (0..m)
        .map(|j| {
            let k = j + n - m;
            coeffs.c(k) * binomial_f64(k, n - m) / binomial_f64(n, m)
        })
        .collect();
    Ok(RestrictedCoefficients { m, b })
}

/// `C(n,q) C(l,p) C(l-p,l-q) == C(n,p) C(n-p,n-q) C(l,q)` for `p <= q <= l <= n`.
pub fn product_identity(n: u64, l: u64, p: u64, q: u64) -> Result<bool, KernelError> {
    if !(p <= q && q <= l && l <= n) {
        return Err(KernelError::Domain(format!(
            "product identity needs p <= q <= l <= n, got n={n} l={l} p={p} q={q}"
        )));
    }
    let lhs = binomial(n, q) * binomial(l, p) * binomial(l - p, l - q);
    let rhs = binomial(n, p) * binomial(n - p, n - q) * binomial(l, q);
    Ok(lhs == rhs)
}

/// The coefficient chain when restricting to an `m`-dimensional `Z` and a
/// codimension-`p` subvariety of it:
/// `b_j C(j,p) / C(m,p) == c_k C(k, p+n-m) / C(n, p+n-m)` with `k = j+n-m`.
/// `c_k` cancels, so the check is on the binomial factors, cross-multiplied.
pub fn restriction_chain_identity(n: u64, m: u64, p: u64, j: u64) -> Result<bool, KernelError> {
    if !(m >= 1 && m < n && p <= j && j < m) {
        return Err(KernelError::Domain(format!(
            "restriction chain needs 1 <= m < n and p <= j < m, got n={n} m={m} p={p} j={j}"
        )));
    }
    let k = j + n - m;
    let codim = p + n - m;
    // b_j / c_k = C(k, n-m) / C(n, m)
    let lhs = binomial(k, n - m) * binomial(j, p) * binomial(n, codim);
    let rhs = binomial(k, codim) * binomial(n, m) * binomial(m, p);
    Ok(lhs == rhs)
}

/// Both identities, reading `(l, q)` as `(m, j)` for the chain when in range.
pub fn binomial_restriction_identities(n: u64, l: u64, p: u64, q: u64) -> Result<bool, KernelError> {
    let product = product_identity(n, l, p, q)?;
    let chain = if l >= 1 && l < n && q < l {
        restriction_chain_identity(n, l, p, q)?
    } else {
        true
    };
    Ok(product && chain)
}

/// `epsilon = 1/C` such that `Omega + 2 beta alpha` satisfies the
/// epsilon-uniform cone condition whenever `Omega` satisfies the degenerate
/// one and `chi <= c_chi * alpha`.
///
/// With `gamma = beta / c_chi`, shifting the eigenvalues twice by `gamma`
/// lowers the load `B` to at most `B - B^2 / C`, where
/// `C = max(4, sum_k c_k C(n-1,n-k) (2/gamma)^{n-k} / C(n,k))`
/// (Cauchy-Schwarz on the terms of `S_{n-k;j}`, then across `k`).
pub fn strict_cone_epsilon(coeffs: &CoefficientSet, beta: f64, c_chi: f64) -> Result<f64, KernelError> {
    if !(beta > 0.0 && c_chi > 0.0) {
        return Err(KernelError::Domain("beta and c_chi must be positive".into()));
    }
    let n = coeffs.n();
    let gamma = beta / c_chi;
    let s: f64 = (1..n)
        .filter(|&k| coeffs.c(k) > 0.0)
        .map(|k| {
            let m = n - k;
            coeffs.c(k) * binomial_f64(n - 1, m) * (2.0 / gamma).powi(m as i32) / binomial_f64(n, k)
        })
        .sum();
    Ok(1.0 / s.max(4.0))
}
