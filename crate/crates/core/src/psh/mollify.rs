//! `phi_delta(x) = delta^{-2n} int phi(x - y) rho(|y|/delta) dy`.

use nalgebra::DMatrix;

use super::mollifier::{sphere_area, RadialMollifier};
use super::potential::Potential;
use super::quadrature::{adaptive, sphere_rule, Resolution, Rule};
use super::{Complex64, PshError};

const LOG_TOL: f64 = 1e-13;

/// Points `u` of the unit ball with weights proportional to
/// `|S| rho(|u|) |u|^{2n-1} w` and summing to one, so that `sum w g(u)` approximates `int_B g(u) rho(|u|) du`.
#[derive(Debug, Clone)]
pub struct BallRule {
    points: Vec<(Vec<f64>, f64)>,
}

impl BallRule {
    pub fn new(mollifier: &RadialMollifier, res: Resolution) -> Self {
        let n = mollifier.n();
        let area = sphere_area(n);
        let radial: Vec<(f64, f64)> = Rule::new(res.radial)
            .on(0.0, 1.0)
            .map(|(s, ws)| (s, area * mollifier.rho(s) * s.powi(2 * n as i32 - 1) * ws))
            .collect();
        // rescale so constants are reproduced exactly at any resolution
        let total: f64 = radial.iter().map(|(_, w)| w).sum();
        let sphere = sphere_rule(n, res);
        let mut points = Vec::with_capacity(radial.len() * sphere.len());
        for &(s, w) in &radial {
            let w_r = w / total;
            for (omega, wo) in &sphere {
                points.push((omega.iter().map(|v| s * v).collect(), w_r * wo));
            }
        }
        Self { points }
    }

    pub fn points(&self) -> &[(Vec<f64>, f64)] {
        &self.points
    }

    /// `sum_i w_i g(x - delta u_i)`.
    pub fn average<T>(&self, x: &[f64], delta: f64, zero: T, g: impl Fn(&[f64]) -> T) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let mut p = vec![0.0; x.len()];
        let mut acc = zero;
        for (u, w) in &self.points {
            for a in 0..x.len() {
                p[a] = x[a] - delta * u[a];
            }
            acc = acc + g(&p) * *w;
        }
        acc
    }
}

pub(crate) fn check_ball(potential: &dyn Potential, x: &[f64], radius: f64) -> Result<(), PshError> {
    if x.len() != potential.real_dim() {
        return Err(PshError::Domain(format!(
            "point has {} coordinates, potential lives in R^{}",
            x.len(),
            potential.real_dim()
        )));
    }
    if let Some((lo, hi)) = potential.domain() {
        let inside = x
            .iter()
            .zip(lo.iter().zip(hi))
            .all(|(&v, (&l, &h))| v - radius >= l && v + radius <= h);
        if !inside {
            return Err(PshError::Domain(format!(
                "ball of radius {radius} around the point escapes the sample domain"
            )));
        }
    }
    Ok(())
}

/// Mean of `log|a + r omega|^2` over the unit sphere of `R^{2n}`, `|a| = big_a`.
///
/// For `n = 1` this is `log max(|a|, r)^2`. Otherwise the mean reduces to the
/// polar angle between `a` and `omega`, whose density is `sin^{2n-2}`.
pub fn log_sphere_mean(n: usize, big_a: f64, r: f64) -> f64 {
    if big_a == 0.0 {
        return 2.0 * r.ln();
    }
    if r == 0.0 {
        return 2.0 * big_a.ln();
    }
    if n == 1 {
        return 2.0 * big_a.max(r).ln();
    }
    let p = 2 * n as i32 - 2;
    let f = |th: f64| {
        let c = (0.5 * th).cos();
        let arg = (big_a - r).powi(2) + 4.0 * big_a * r * c * c;
        if arg > 0.0 {
            arg.ln() * th.sin().powi(p)
        } else {
            0.0
        }
    };
    let norm = adaptive(&|th: f64| th.sin().powi(p), 0.0, std::f64::consts::PI, LOG_TOL);
    adaptive(&f, 0.0, std::f64::consts::PI, LOG_TOL) / norm
}

/// Mollification of `gamma log|z - c|^2` at `x`.
pub fn mollify_log(mollifier: &RadialMollifier, gamma: f64, center: &[f64], delta: f64, x: &[f64]) -> f64 {
    if gamma == 0.0 {
        return 0.0;
    }
    let n = mollifier.n();
    let big_a = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    if n == 1 {
        if big_a >= delta {
            // circle means of a harmonic function
            return gamma * (big_a * big_a).ln();
        }
        let kink = big_a / delta;
        let g = |s: f64| {
            let r = delta * s;
            if r <= big_a {
                2.0 * big_a.ln()
            } else {
                2.0 * r.ln()
            }
        };
        return gamma * mollifier.radial_average(&g, &[kink]);
    }
    let kink = big_a / delta;
    let g = |s: f64| log_sphere_mean(n, big_a, delta * s);
    gamma * mollifier.radial_average(&g, &[kink])
}

/// `phi_delta(x)`. The smooth part goes through the tensor rule; a log
/// singularity is averaged semi-analytically.
pub fn mollify(
    potential: &dyn Potential,
    mollifier: &RadialMollifier,
    delta: f64,
    x: &[f64],
) -> Result<f64, PshError> {
    mollify_with(potential, mollifier, delta, x, Resolution::default())
}

pub fn mollify_with(
    potential: &dyn Potential,
    mollifier: &RadialMollifier,
    delta: f64,
    x: &[f64],
    res: Resolution,
) -> Result<f64, PshError> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(PshError::Domain("delta must be positive".into()));
    }
    if potential.real_dim() != 2 * mollifier.n() {
        return Err(PshError::Domain("mollifier and potential dimensions differ".into()));
    }
    check_ball(potential, x, delta)?;
    let rule = BallRule::new(mollifier, res);
    let smooth = rule.average(x, delta, 0.0, |p| potential.smooth_value(p));
    let log = match potential.log_singularity() {
        Some((gamma, center)) => mollify_log(mollifier, gamma, center, delta, x),
        None => 0.0,
    };
    Ok(smooth + log)
}

/// Mollified complex Hessian `(d dbar phi)_delta(x)`, from the Hessian field
/// of the potential. The ball must stay away from any log singularity.
pub fn mollified_hessian(
    potential: &dyn Potential,
    rule: &BallRule,
    delta: f64,
    x: &[f64],
) -> Result<DMatrix<Complex64>, PshError> {
    check_ball(potential, x, delta)?;
    if let Some((gamma, center)) = potential.log_singularity() {
        let dist = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        if gamma > 0.0 && dist <= delta {
            return Err(PshError::Domain(
                "ball meets the log singularity; its Hessian is not a function there".into(),
            ));
        }
    }
    let n = potential.real_dim() / 2;
    let zero = HermitianSum(DMatrix::zeros(n, n));
    Ok(rule
        .average(x, delta, zero, |p| HermitianSum(potential.complex_hessian(p)))
        .0)
}

struct HermitianSum(DMatrix<Complex64>);

impl std::ops::Add for HermitianSum {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        HermitianSum(self.0 + rhs.0)
    }
}

impl std::ops::Mul<f64> for HermitianSum {
    type Output = Self;
    fn mul(self, w: f64) -> Self {
        HermitianSum(self.0 * Complex64::new(w, 0.0))
    }
}
