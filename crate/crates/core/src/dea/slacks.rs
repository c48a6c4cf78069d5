use serde::{Deserialize, Serialize};

use super::config::{DeaConfig, Technology};
use super::envelopment::{solve_stage, Reference};
use super::DeaError;
use crate::data::Dataset;
use crate::lp::{LinearProgram, LpSolution, Sense, Tolerances};

/// Slack magnitudes are compared against `eps · max(1, |reference|)` so the
/// test does not depend on the unit of the variable.
pub fn is_positive_slack(slack: f64, reference: f64, eps: f64) -> bool {
    slack > eps * reference.abs().max(1.0)
}

/// Zeroes values at round-off level relative to `scale`.
fn snap(v: f64, scale: f64) -> f64 {
    if v.abs() <= 1e-12 * scale.abs().max(1.0) {
        0.0
    } else {
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxSlackSolution {
    pub input_slacks: Vec<f64>,
    pub output_slacks: Vec<f64>,
    pub lambda: Vec<f64>,
}

/// Solves a program whose right-hand side depends on an optimal radial score.
///
/// The score comes out of a floating-point solve, so holding it exactly can
/// leave the follow-up program infeasible by rounding. The score is relaxed in
/// tiny relative steps until the program solves.
pub(crate) fn with_fixed_theta(
    theta: f64,
    tol: &Tolerances,
    stage: &'static str,
    build: impl Fn(f64) -> LinearProgram,
) -> Result<LpSolution, DeaError> {
    let mut last = None;
    for relax in [0.0, 1e-10, 1e-9, 1e-8] {
        match solve_stage(&build(theta * (1.0 + relax)), tol, stage) {
            Ok(sol) => return Ok(sol),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

pub(crate) fn max_slack_with(
    reference: &Reference,
    k: usize,
    theta: f64,
    tech: Technology,
    tol: &Tolerances,
) -> Result<MaxSlackSolution, DeaError> {
    reference.check_index(k)?;
    let farms = reference.farms();
    let n = reference.x.len();
    let m = reference.y.len();
    let width = farms + n + m;
    let build = |theta: f64| {
        let mut objective = vec![0.0; width];
        for c in &mut objective[farms..] {
            *c = -1.0;
        }
        let mut lp = LinearProgram::minimize(objective);
        for (i, row) in reference.x.iter().enumerate() {
            let mut coeffs = row.clone();
            coeffs.resize(width, 0.0);
            coeffs[farms + i] = 1.0;
            lp.constraint(coeffs, Sense::Eq, theta * row[k]);
        }
        for (j, row) in reference.y.iter().enumerate() {
            let mut coeffs = row.clone();
            coeffs.resize(width, 0.0);
            coeffs[farms + n + j] = -1.0;
            lp.constraint(coeffs, Sense::Eq, row[k]);
        }
        if tech == Technology::Vrs {
            let mut coeffs = vec![1.0; farms];
            coeffs.resize(width, 0.0);
            lp.constraint(coeffs, Sense::Eq, 1.0);
        }
        lp
    };
    let sol = with_fixed_theta(theta, tol, "max-slack", build)?;
    let input_slacks = sol.values[farms..farms + n]
        .iter()
        .zip(&reference.x)
        .map(|(s, row)| snap(*s, row[k]))
        .collect();
    let output_slacks = sol.values[farms + n..]
        .iter()
        .zip(&reference.y)
        .map(|(s, row)| snap(*s, row[k]))
        .collect();
    Ok(MaxSlackSolution {
        lambda: sol.values[..farms].iter().map(|l| snap(*l, 1.0)).collect(),
        input_slacks,
        output_slacks,
    })
}

/// Maximises the total slack with the radial score held at `theta`, under the
/// configured technology.
pub fn max_slack_phase(d: &Dataset, k: usize, theta: f64, cfg: &DeaConfig) -> Result<MaxSlackSolution, DeaError> {
    max_slack_with(&Reference::new(d), k, theta, cfg.rts_assumption, &cfg.lp)
}
