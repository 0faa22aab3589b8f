use gma_core::toric::{check_criterion, format_rational, ToricConfig};

use crate::config::Loaded;
use crate::error::CliError;
use crate::output::Output;

/// Exit code 3 when the criterion fails on some face.
pub fn check(cfg: &Loaded<ToricConfig>) -> Result<Output, CliError> {
    let pair = cfg.value.pair()?;
    let report = check_criterion(&pair, &cfg.value.coefficients()?)?;
    let mut csv = String::from("faceId,dim,codim,conditioned,lhs,rhsScale,ratio\n");
    for f in &report.per_face {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            f.face_id,
            f.dim,
            f.codim,
            f.conditioned,
            format_rational(&f.lhs),
            format_rational(&f.rhs_scale),
            format_rational(&f.ratio)
        ));
    }
    let code = if report.pass { 0 } else { 3 };
    Ok(Output::new(&report)?.with_csv(csv).with_code(code))
}
