use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use gma_core::kernel::CoefficientSet;
use gma_core::pde::grid_io::{encode, read_grid};
use gma_core::pde::{
    class_path_probe, cohomology_integrals, cone_margin_field, continuity_solve, manufacture, CohomologyIntegrals,
    NewtonOptions, PotentialField, Scheme, SolveState, TorusGeometry, TrigPolynomial,
};

use crate::config::{matrix, Loaded};
use crate::error::{invalid, CliError};
use crate::output::Output;

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SolveConfig {
    #[serde(rename = "schemaVersion")]
    _schema: u32,
    /// Grid points per direction; its length is the dimension.
    pub grid: Vec<usize>,
    #[serde(default)]
    pub scheme: Scheme,
    /// Constant form of `chi` (identity when absent).
    pub x: Option<Vec<Vec<f64>>>,
    /// Constant form of `Omega_0` (identity when absent).
    pub w0: Option<Vec<Vec<f64>>>,
    /// `c_1, ..., c_{n-1}`.
    pub c: Vec<f64>,
    pub f: Option<TrigPolynomial>,
    pub f_grid: Option<String>,
    pub phi_star: Option<TrigPolynomial>,
    pub phi_star_grid: Option<String>,
    #[serde(default)]
    pub newton: NewtonOptions,
    /// Class scalings for `classpath`, strictly decreasing.
    #[serde(default)]
    pub s: Vec<f64>,
}

fn geometry(c: &SolveConfig) -> Result<TorusGeometry, CliError> {
    let n = c.grid.len();
    let form = |m: &Option<Vec<Vec<f64>>>, name: &str| match m {
        Some(rows) => matrix(rows, name),
        None => Ok(DMatrix::identity(n, n)),
    };
    Ok(TorusGeometry::new(c.grid.clone(), form(&c.x, "x")?, form(&c.w0, "w0")?)?.with_scheme(c.scheme))
}

fn grid_field(cfg: &Loaded<SolveConfig>, geom: &TorusGeometry, path: &str) -> Result<Vec<f64>, CliError> {
    let (shape, values) = read_grid(&cfg.resolve(path))?;
    if shape != geom.shape() {
        return Err(invalid(format!("grid file {path} has shape {shape:?}, expected {:?}", geom.shape())));
    }
    Ok(values)
}

fn sampled(
    cfg: &Loaded<SolveConfig>,
    geom: &TorusGeometry,
    trig: &Option<TrigPolynomial>,
    grid: &Option<String>,
    name: &str,
) -> Result<Option<Vec<f64>>, CliError> {
    match (trig, grid) {
        (Some(_), Some(_)) => Err(invalid(format!("give either {name} or {name}Grid, not both"))),
        (Some(t), None) => Ok(Some(t.sample(geom)?)),
        (None, Some(p)) => Ok(Some(grid_field(cfg, geom, p)?)),
        (None, None) => Ok(None),
    }
}

fn setup(cfg: &Loaded<SolveConfig>) -> Result<(TorusGeometry, CoefficientSet), CliError> {
    let geom = geometry(&cfg.value)?;
    let coeffs = CoefficientSet::new(geom.n(), cfg.value.c.clone())?;
    Ok((geom, coeffs))
}

fn forcing(cfg: &Loaded<SolveConfig>, geom: &TorusGeometry) -> Result<Vec<f64>, CliError> {
    sampled(cfg, geom, &cfg.value.f, &cfg.value.f_grid, "f")?.ok_or_else(|| invalid("config needs f or fGrid"))
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Recovery {
    /// Sup distance to the reference potential, modulo constants.
    sup_error_mod_constants: f64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct RunReport {
    converged: bool,
    phi_sup: f64,
    state: SolveState,
    recovery: Option<Recovery>,
}

pub fn run(cfg: &Loaded<SolveConfig>) -> Result<Output, CliError> {
    let (geom, coeffs) = setup(cfg)?;
    let f = forcing(cfg, &geom)?;
    let reference = sampled(cfg, &geom, &cfg.value.phi_star, &cfg.value.phi_star_grid, "phiStar")?;
    let state = continuity_solve(&geom, &coeffs, &f, &cfg.value.newton)?;
    let recovery = match reference {
        Some(values) => {
            let star = PotentialField::new(geom.shape().to_vec(), values)?;
            Some(Recovery { sup_error_mod_constants: state.phi.distance_mod_constants(&star) })
        }
        None => None,
    };
    let grid = encode(geom.shape(), &state.phi.values)?;
    let report = RunReport { converged: true, phi_sup: state.phi.sup_norm(), recovery, state };
    Ok(Output::new(&report)?.with_file("phi.grid", grid))
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ManufactureReport {
    grid: Vec<usize>,
    f_min: f64,
    f_max: f64,
    f_mean: f64,
    min_cone_margin: f64,
    integrals: CohomologyIntegrals,
}

pub fn manufacture_case(cfg: &Loaded<SolveConfig>) -> Result<Output, CliError> {
    let (geom, coeffs) = setup(cfg)?;
    let values = sampled(cfg, &geom, &cfg.value.phi_star, &cfg.value.phi_star_grid, "phiStar")?
        .ok_or_else(|| invalid("manufacture needs phiStar or phiStarGrid"))?;
    let phi_star = PotentialField::new(geom.shape().to_vec(), values)?;
    let case = manufacture(&geom, &coeffs, &phi_star)?;
    let margin = cone_margin_field(&geom, &coeffs, 1.0, &phi_star)?;
    let f = &case.f_grid;
    let report = ManufactureReport {
        grid: geom.shape().to_vec(),
        f_min: f.iter().copied().fold(f64::INFINITY, f64::min),
        f_max: f.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        f_mean: f.iter().sum::<f64>() / f.len() as f64,
        min_cone_margin: margin.min_margin,
        integrals: cohomology_integrals(&geom, &coeffs, f)?,
    };
    Ok(Output::new(&report)?
        .with_file("f.grid", encode(geom.shape(), f)?)
        .with_file("phi_star.grid", encode(geom.shape(), &phi_star.values)?))
}

pub fn classpath(cfg: &Loaded<SolveConfig>) -> Result<Output, CliError> {
    let (geom, coeffs) = setup(cfg)?;
    let f = forcing(cfg, &geom)?;
    let report = class_path_probe(&geom, &coeffs, &f, &cfg.value.s, &cfg.value.newton)?;
    let opt = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
    let mut csv = String::from("s,a_s,solvable,minConeMargin,slack\n");
    for e in &report.entries {
        csv.push_str(&format!("{},{},{},{},{}\n", e.s, e.a_s, e.solvable, opt(e.min_cone_margin), opt(e.slack)));
    }
    Ok(Output::new(&report)?.with_csv(csv))
}
