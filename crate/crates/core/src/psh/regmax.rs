//! Smoothed maximum `max_eta(a_1..a_m) = E[max_j (a_j + eta S_j)]`, the
//! `S_j` independent with density `theta(s) = (15/8)(1 - 4s^2)^2` on `[-1/2, 1/2]`.

use super::quadrature::Rule;
use super::PshError;

pub fn theta(s: f64) -> f64 {
    if s.abs() >= 0.5 {
        0.0
    } else {
        1.875 * (1.0 - 4.0 * s * s).powi(2)
    }
}

/// Distribution function of `theta`.
pub fn theta_cdf(s: f64) -> f64 {
    if s <= -0.5 {
        0.0
    } else if s >= 0.5 {
        1.0
    } else {
        0.5 + 1.875 * s - 5.0 * s.powi(3) + 6.0 * s.powi(5)
    }
}

fn check_eta(eta: f64) -> Result<(), PshError> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(PshError::Domain("eta must be positive and finite".into()));
    }
    Ok(())
}

pub fn regularized_max(values: &[f64], eta: f64) -> Result<f64, PshError> {
    check_eta(eta)?;
    if values.is_empty() {
        return Err(PshError::Empty("no values".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(PshError::Domain("values must be finite".into()));
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    let top = v[0];
    // arguments at least eta below the top never win
    v.retain(|&a| a > top - eta);
    if v.len() == 1 {
        return Ok(top);
    }
    // E[M] = L + eta int_0^1 (1 - prod_j Theta((L - a_j)/eta + w)) dw, L = top - eta/2
    let lo = top - 0.5 * eta;
    let shifts: Vec<f64> = v.iter().map(|a| (lo - a) / eta).collect();
    let mut cuts: Vec<f64> = vec![0.0, 1.0];
    for s in &shifts {
        for edge in [-0.5 - s, 0.5 - s] {
            if edge > 0.0 && edge < 1.0 {
                cuts.push(edge);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let rule = Rule::new((5 * v.len()).div_ceil(2) + 1);
    let integrand = |w: f64| 1.0 - shifts.iter().map(|s| theta_cdf(s + w)).product::<f64>();
    let area: f64 = cuts.windows(2).map(|c| rule.integrate(integrand, c[0], c[1])).sum();
    Ok(lo + eta * area)
}

/// `kappa = E[max(S, T)]`, so that `max_eta(a, a) = a + kappa eta`.
pub fn regularized_max_kappa() -> f64 {
    regularized_max(&[0.0, 0.0], 1.0).expect("valid arguments")
}

/// Value and derivatives of the pair maximum `M(a, b)`:
/// `M = b + H(a - b)`, returns `(M, H'(a-b), H''(a-b))`, so that
/// `dM/da = H'`, `dM/db = 1 - H'` and every second derivative is `+-H''`.
pub fn regularized_max_pair(a: f64, b: f64, eta: f64) -> Result<(f64, f64, f64), PshError> {
    check_eta(eta)?;
    let value = regularized_max(&[a, b], eta)?;
    let d = a - b;
    if d >= eta {
        return Ok((value, 1.0, 0.0));
    }
    if d <= -eta {
        return Ok((value, 0.0, 0.0));
    }
    let shift = d / eta;
    let mut cuts = vec![-0.5, 0.5];
    for edge in [-0.5 - shift, 0.5 - shift] {
        if edge > -0.5 && edge < 0.5 {
            cuts.push(edge);
        }
    }
    cuts.sort_by(f64::total_cmp);
    let rule = Rule::new(8);
    let first: f64 = cuts
        .windows(2)
        .map(|c| rule.integrate(|s| theta(s) * theta_cdf(s + shift), c[0], c[1]))
        .sum();
    let second: f64 = cuts
        .windows(2)
        .map(|c| rule.integrate(|s| theta(s) * theta(s + shift), c[0], c[1]))
        .sum::<f64>()
        / eta;
    Ok((value, first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_a_probability_density() {
        let rule = Rule::new(6);
        assert!((rule.integrate(theta, -0.5, 0.5) - 1.0).abs() < 1e-14);
        assert!((theta_cdf(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(theta_cdf(0.0), 0.5);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let eta = 0.7;
        for d in [-0.5, -0.2, 0.0, 0.1, 0.6] {
            let h = 1e-5;
            let (_, g, gg) = regularized_max_pair(d, 0.0, eta).unwrap();
            let up = regularized_max(&[d + h, 0.0], eta).unwrap();
            let down = regularized_max(&[d - h, 0.0], eta).unwrap();
            assert!(((up - down) / (2.0 * h) - g).abs() < 1e-8, "d = {d}");
            let (_, gu, _) = regularized_max_pair(d + h, 0.0, eta).unwrap();
            let (_, gd, _) = regularized_max_pair(d - h, 0.0, eta).unwrap();
            assert!(((gu - gd) / (2.0 * h) - gg).abs() < 1e-7, "d = {d}");
        }
    }
}
