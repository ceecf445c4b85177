//! Parameter sweeps comparing the observed refined shape constant with the
//! theoretical bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{generate, Family, GenSpec};

use super::verify::verify_theorem31;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub param: f64,
    pub c0: f64,
    pub observed: f64,
    pub c1: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    /// One note per skipped parameter value.
    pub notes: Vec<String>,
}

impl SweepOutcome {
    /// Records whose slack is at most `factor`.
    pub fn tight_records(&self, factor: f64) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(move |r| !(r.slack > factor))
    }
}

/// Name of the swept parameter for a family.
pub fn param_name(family: Family) -> &'static str {
    match family {
        Family::Sliver => "eps",
        Family::TwoTetSkew => "offset",
        Family::PerturbedCube => "sigma",
        Family::CubeKuhn => "n",
        Family::TwoTetMirror | Family::RegularTet => "param",
    }
}

fn spec_for(template: &GenSpec, param: f64) -> GenSpec {
    let mut spec = *template;
    match template.family {
        Family::Sliver | Family::TwoTetSkew => spec.eps = param,
        Family::PerturbedCube => spec.sigma = param,
        Family::CubeKuhn => spec.n = param.round().max(0.0) as usize,
        Family::TwoTetMirror | Family::RegularTet => {}
    }
    spec
}

/// Generate one mesh per parameter value (starting from `template`) and run
/// the refined-mesh bound check on each. Parameter values whose mesh cannot
/// be generated or refined are skipped with a note.
pub fn sweep_sharpness(template: &GenSpec, params: &[f64]) -> SweepOutcome {
    let mut outcome = SweepOutcome::default();
    for &param in params {
        let spec = spec_for(template, param);
        let result = generate(&spec).and_then(|m| verify_theorem31(&m));
        match result {
            Ok(thm) => outcome.records.push(SweepRecord {
                param,
                c0: thm.constants.c0,
                observed: thm.observed,
                c1: thm.bound,
                slack: thm.slack,
            }),
            Err(e) => outcome
                .notes
                .push(format!("{} = {param}: skipped ({e})", param_name(template.family))),
        }
    }
    outcome
}

/// `steps` values spaced geometrically from `from` to `to` inclusive.
pub fn geometric_grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !(from > 0.0 && to > 0.0 && from.is_finite() && to.is_finite()) || steps == 0 {
        return Err(Error::InvalidParameter(format!(
            "geometric grid needs positive finite end points and at least one step (got {from}, {to}, {steps})"
        )));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let ratio = (to / from).ln() / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| match i {
            0 => from,
            i if i == steps - 1 => to,
            i => from * (ratio * i as f64).exp(),
        })
        .collect())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
