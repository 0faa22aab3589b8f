use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use gma_core::kernel::CoefficientSet;
use gma_core::psh::{
    compute_cn, glue_potentials, lelong_level_with, mollify_with, ConstantPotential, GluePiece, GlueSetup,
    Potential, Profile, QuadraticPotential, RadialMollifier, Resolution, SingularPotential, SupSampling,
};

use crate::config::{matrix, Loaded};
use crate::error::{invalid, CliError};
use crate::output::Output;

/// Potentials on `C^n`, points given as `(x_1, y_1, ..., x_n, y_n)`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", deny_unknown_fields)]
pub enum PotentialSpec {
    Constant {
        value: f64,
    },
    /// `sum_j w_j |z_j|^2 + constant`.
    Quadratic {
        weights: Vec<f64>,
        #[serde(default)]
        constant: f64,
    },
    /// `gamma log |z - center|^2 + sum_j w_j |z_j|^2`.
    Log {
        gamma: f64,
        center: Vec<f64>,
        #[serde(default)]
        weights: Option<Vec<f64>>,
    },
}

impl PotentialSpec {
    fn build(&self, n: usize) -> Result<Box<dyn Potential>, CliError> {
        let check = |len: usize, what: &str, want: usize| {
            if len == want {
                Ok(())
            } else {
                Err(invalid(format!("{what} has {len} entries, expected {want}")))
            }
        };
        Ok(match self {
            PotentialSpec::Constant { value } => Box::new(ConstantPotential { dim: 2 * n, value: *value }),
            PotentialSpec::Quadratic { weights, constant } => {
                check(weights.len(), "weights", n)?;
                Box::new(QuadraticPotential::diagonal(weights).with_constant(*constant))
            }
            PotentialSpec::Log { gamma, center, weights } => {
                check(center.len(), "center", 2 * n)?;
                let smooth: Box<dyn Potential> = match weights {
                    Some(w) => {
                        check(w.len(), "weights", n)?;
                        Box::new(QuadraticPotential::diagonal(w))
                    }
                    None => Box::new(ConstantPotential { dim: 2 * n, value: 0.0 }),
                };
                Box::new(SingularPotential::new(*gamma, center.clone(), smooth)?)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ResolutionSpec {
    pub radial: usize,
    pub simplex: usize,
    pub angular: usize,
}

impl From<ResolutionSpec> for Resolution {
    fn from(r: ResolutionSpec) -> Self {
        Resolution { radial: r.radial, simplex: r.simplex, angular: r.angular }
    }
}

fn default_profile() -> Profile {
    Profile::Polynomial
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MollifyConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    pub n: usize,
    pub potential: PotentialSpec,
    #[serde(default = "default_profile")]
    pub profile: Profile,
    pub delta: f64,
    pub points: Vec<Vec<f64>>,
    pub resolution: Option<ResolutionSpec>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct MollifyReport {
    delta: f64,
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

pub fn mollify(cfg: &Loaded<MollifyConfig>) -> Result<Output, CliError> {
    let c = &cfg.value;
    let pot = c.potential.build(c.n)?;
    let m = RadialMollifier::new(c.n, c.profile.clone())?;
    let res = c.resolution.map(Resolution::from).unwrap_or_default();
    let values = c
        .points
        .iter()
        .map(|x| mollify_with(pot.as_ref(), &m, c.delta, x, res))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::new();
    for (x, v) in c.points.iter().zip(&values) {
        let coords: Vec<String> = x.iter().map(|v| format!("{v}")).collect();
        csv.push_str(&format!("{},{v}\n", coords.join(",")));
    }
    Output::new(&MollifyReport { delta: c.delta, points: c.points.clone(), values }).map(|o| o.with_csv(csv))
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct LelongConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    pub n: usize,
    pub potential: PotentialSpec,
    /// Base point; the origin when absent.
    pub point: Option<Vec<f64>>,
    pub r: f64,
    /// Defaults to `r/8, r/16, r/32`.
    pub deltas: Option<Vec<f64>>,
    #[serde(default)]
    pub sampling: SupSampling,
}

pub fn lelong(cfg: &Loaded<LelongConfig>) -> Result<Output, CliError> {
    let c = &cfg.value;
    let pot = c.potential.build(c.n)?;
    let x = c.point.clone().unwrap_or_else(|| vec![0.0; 2 * c.n]);
    let deltas = c.deltas.clone().unwrap_or_else(|| vec![c.r / 8.0, c.r / 16.0, c.r / 32.0]);
    let result = lelong_level_with(pot.as_ref(), &x, &deltas, c.r, c.sampling)?;
    let mut csv = String::from("delta,nu,supAtDelta\n");
    for ((d, nu), s) in result.deltas.iter().zip(&result.nu_at_delta).zip(&result.sup_at_delta) {
        csv.push_str(&format!("{d},{nu},{s}\n"));
    }
    Ok(Output::new(&result)?.with_csv(csv.clone()).with_file("lelong.csv", csv.into_bytes()))
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CnConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    pub n: usize,
    pub profile: Profile,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CnReport {
    n: usize,
    profile: Profile,
    cn: f64,
    normalization_defect: f64,
    log_moment: f64,
}

pub fn cn(cfg: &Loaded<CnConfig>) -> Result<Output, CliError> {
    let c = &cfg.value;
    let m = RadialMollifier::new(c.n, c.profile.clone())?;
    let report = CnReport {
        n: c.n,
        profile: c.profile.clone(),
        cn: compute_cn(&m, c.n)?,
        normalization_defect: m.normalization_defect(),
        log_moment: m.log_moment(),
    };
    Output::new(&report)
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GlueConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    pub n: usize,
    /// `c_1, ..., c_{n-1}`.
    pub c: Vec<f64>,
    /// Constant Hermitian form of `chi` (identity when absent).
    pub chi: Option<Vec<Vec<f64>>>,
    pub local: PotentialSpec,
    pub global: PotentialSpec,
    pub eta: f64,
    pub offset: f64,
    /// Square grid of the `z_1` plane, `[-halfWidth, halfWidth]^2`.
    pub grid_size: usize,
    pub half_width: f64,
    /// Remaining real coordinates of every grid point.
    #[serde(default)]
    pub base: Vec<f64>,
    /// The local potential lives on the ball `|x| < regionRadius`.
    pub region_radius: f64,
    /// Points of the region within this distance of its boundary form the edge.
    pub edge_width: f64,
}

pub fn glue(cfg: &Loaded<GlueConfig>) -> Result<Output, CliError> {
    let c = &cfg.value;
    if c.grid_size < 2 || c.base.len() + 2 != 2 * c.n {
        return Err(invalid("gridSize must be >= 2 and base must hold 2n - 2 coordinates"));
    }
    let coeffs = CoefficientSet::new(c.n, c.c.clone())?;
    let chi = match &c.chi {
        Some(rows) => matrix(rows, "chi")?,
        None => DMatrix::identity(c.n, c.n),
    };
    let m = c.grid_size;
    let mut points = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let step = 2.0 * c.half_width / (m - 1) as f64;
            let mut p = vec![-c.half_width + step * i as f64, -c.half_width + step * j as f64];
            p.extend(&c.base);
            points.push(p);
        }
    }
    let radius = |p: &Vec<f64>| p.iter().map(|v| v * v).sum::<f64>().sqrt();
    let in_region: Vec<bool> = points.iter().map(|p| radius(p) < c.region_radius).collect();
    let edge: Vec<bool> = points
        .iter()
        .map(|p| radius(p) < c.region_radius && radius(p) >= c.region_radius - c.edge_width)
        .collect();
    let local = GluePiece::sample(c.local.build(c.n)?.as_ref(), &points);
    let global = GluePiece::sample(c.global.build(c.n)?.as_ref(), &points);
    let setup = GlueSetup { points: &points, in_region: &in_region, edge: &edge, coeffs: &coeffs, chi: &chi };
    let report = glue_potentials(&local, &global, c.eta, c.offset, &setup)?;
    let code = if report.accepted { 0 } else { 1 };
    Ok(Output::new(&report)?.with_code(code))
}
