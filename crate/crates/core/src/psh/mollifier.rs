use serde::{Deserialize, Serialize};

use super::quadrature::adaptive;
use super::PshError;

const QUAD_TOL: f64 = 1e-14;
const NORMALIZATION_TOL: f64 = 1e-6;

/// Area of the unit sphere `S^{2n-1}` in `C^n`: `2 pi^n / (n-1)!`.
pub fn sphere_area(n: usize) -> f64 {
    let fact: f64 = (1..n).map(|v| v as f64).product();
    2.0 * std::f64::consts::PI.powi(n as i32) / fact
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Profile {
    /// Indicator of the unit ball.
    Constant,
    /// `(1 - t^2)^3` on `[0, 1]`.
    Polynomial,
    /// Samples on an equispaced grid of `[0, 1]`, linearly interpolated.
    Sampled { values: Vec<f64> },
}

impl Profile {
    fn shape(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        match self {
            Profile::Constant => 1.0,
            Profile::Polynomial => (1.0 - t * t).powi(3),
            Profile::Sampled { values } => {
                let m = values.len() - 1;
                let x = t * m as f64;
                let i = (x.floor() as usize).min(m - 1);
                let s = x - i as f64;
                values[i] * (1.0 - s) + values[i + 1] * s
            }
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Profile::Sampled { values } => {
                let m = values.len() - 1;
                (0..=m).map(|i| i as f64 / m as f64).collect()
            }
            _ => vec![0.0, 1.0],
        }
    }
}

/// Radial kernel `rho(|y|)` on the unit ball of `C^n`, scaled so that
/// `|S^{2n-1}| int_0^1 rho(t) t^{2n-1} dt = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMollifier {
    n: usize,
    profile: Profile,
    scale: f64,
    normalization_defect: f64,
}

impl RadialMollifier {
    pub fn new(n: usize, profile: Profile) -> Result<Self, PshError> {
        if n == 0 {
            return Err(PshError::Domain("dimension must be at least 1".into()));
        }
        if let Profile::Sampled { values } = &profile {
            if values.len() < 2 || values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(PshError::Domain(
                    "sampled profile needs at least two finite non-negative values".into(),
                ));
            }
        }
        let scale = match profile {
            Profile::Constant => 2.0 * n as f64 / sphere_area(n),
            _ => {
                let raw = moment_of(&profile, n, 1.0, &|t| t.powi(2 * n as i32 - 1));
                if !(raw > 0.0) {
                    return Err(PshError::Domain("profile has zero mass".into()));
                }
                1.0 / raw
            }
        };
        let mut m = Self {
            n,
            profile,
            scale,
            normalization_defect: 0.0,
        };
        m.normalization_defect = (m.mass() - 1.0).abs();
        Ok(m)
    }

    /// Keeps the given scale as is; the defect records how far it is from
    /// normalized.
    pub fn with_scale(n: usize, profile: Profile, scale: f64) -> Result<Self, PshError> {
        let mut m = Self::new(n, profile)?;
        m.scale = scale;
        m.normalization_defect = (m.mass() - 1.0).abs();
        Ok(m)
    }

    pub fn constant(n: usize) -> Self {
        Self::new(n, Profile::Constant).expect("constant profile")
    }

    pub fn polynomial(n: usize) -> Self {
        Self::new(n, Profile::Polynomial).expect("polynomial profile")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn rho(&self, t: f64) -> f64 {
        self.scale * self.profile.shape(t)
    }

    /// `|S^{2n-1}| int_0^1 rho(t) t^{2n-1} dt`, recomputed by adaptive quadrature.
    pub fn mass(&self) -> f64 {
        let n = self.n;
        moment_of(&self.profile, n, self.scale, &|t| t.powi(2 * n as i32 - 1))
    }

    pub fn normalization_defect(&self) -> f64 {
        self.normalization_defect
    }

    /// `|S^{2n-1}| int_0^1 log(1/t) rho(t) t^{2n-1} dt`.
    pub fn log_moment(&self) -> f64 {
        let n = self.n;
        moment_of(&self.profile, n, self.scale, &|t| {
            if t > 0.0 {
                -t.ln() * t.powi(2 * n as i32 - 1)
            } else {
                0.0
            }
        })
    }

    /// `|S^{2n-1}| int_0^1 rho(t) t^{2n-1} g(t) dt`, splitting the radial
    /// interval at `kinks` in addition to the profile's own breakpoints.
    pub fn radial_average(&self, g: &dyn Fn(f64) -> f64, kinks: &[f64]) -> f64 {
        let n = self.n;
        moment_split(&self.profile, n, self.scale, &|t| t.powi(2 * n as i32 - 1) * g(t), kinks)
    }
}

fn moment_of(profile: &Profile, n: usize, scale: f64, weight: &dyn Fn(f64) -> f64) -> f64 {
    moment_split(profile, n, scale, weight, &[])
}

fn moment_split(profile: &Profile, n: usize, scale: f64, weight: &dyn Fn(f64) -> f64, kinks: &[f64]) -> f64 {
    let mut bp = profile.breakpoints();
    bp.extend(kinks.iter().copied().filter(|k| *k > 0.0 && *k < 1.0));
    bp.sort_by(f64::total_cmp);
    bp.dedup();
    let f = |t: f64| profile.shape(t) * weight(t);
    let total: f64 = bp.windows(2).map(|w| adaptive(&f, w[0], w[1], QUAD_TOL)).sum();
    sphere_area(n) * scale * total
}

/// Lower bound constant for the Lelong-level comparison:
/// `c_n = 2 / (|S^{2n-1}| int_0^1 log(1/t) rho(t) t^{2n-1} dt + 3^{2n-1}/2^{2n-3})`.
pub fn compute_cn(mollifier: &RadialMollifier, n: usize) -> Result<f64, PshError> {
    if n != mollifier.n() {
        return Err(PshError::Domain(format!(
            "mollifier lives in dimension {} but n = {n}",
            mollifier.n()
        )));
    }
    if mollifier.normalization_defect() > NORMALIZATION_TOL {
        return Err(PshError::State(format!(
            "mollifier normalization defect {:e} exceeds {NORMALIZATION_TOL:e}",
            mollifier.normalization_defect()
        )));
    }
    let tail = 3f64.powi(2 * n as i32 - 1) / 2f64.powi(2 * n as i32 - 3);
    Ok(2.0 / (mollifier.log_moment() + tail))
}
