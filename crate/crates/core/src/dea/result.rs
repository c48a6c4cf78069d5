use serde::{Deserialize, Serialize};

use super::scale::ReturnsToScale;
use super::slacks::is_positive_slack;
use crate::data::Farm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EfficiencyStatus {
    /// Radial score 1 and no slack.
    Efficient,
    /// Radial score 1 but some slack remains.
    WeaklyEfficient,
    Inefficient,
}

impl EfficiencyStatus {
    pub fn classify(theta: f64, farm: &Farm, input_slacks: &[f64], output_slacks: &[f64], eps: f64) -> Self {
        if theta < 1.0 - eps {
            return EfficiencyStatus::Inefficient;
        }
        let slack = input_slacks
            .iter()
            .zip(&farm.inputs)
            .chain(output_slacks.iter().zip(&farm.outputs))
            .any(|(s, r)| is_positive_slack(*s, *r, eps));
        if slack {
            EfficiencyStatus::WeaklyEfficient
        } else {
            EfficiencyStatus::Efficient
        }
    }

    pub fn is_efficient(self) -> bool {
        self == EfficiencyStatus::Efficient
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub inputs: Vec<f64>,
    pub outputs: Vec<f64>,
}

/// Per-farm first-stage outcome.
///
/// `theta`, `lambda`, slacks, peers and projection refer to the technology
/// selected in the configuration (`technology`); `rts` always comes from the
/// CCR program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeaResult {
    pub farm_id: String,
    pub theta_ccr: f64,
    pub theta_bcc: f64,
    pub scale_efficiency: f64,
    pub technology: super::Technology,
    /// Max-slack intensity vector, one weight per farm in dataset order.
    pub lambda: Vec<f64>,
    pub sum_lambda: f64,
    pub sum_lambda_min: f64,
    pub sum_lambda_max: f64,
    pub input_slacks: Vec<f64>,
    pub output_slacks: Vec<f64>,
    pub peers: Vec<String>,
    pub projection: Projection,
    pub rts: ReturnsToScale,
    pub ccr_status: EfficiencyStatus,
    pub bcc_status: EfficiencyStatus,
}

impl DeaResult {
    /// Radial score under the selected technology.
    pub fn theta(&self) -> f64 {
        match self.technology {
            super::Technology::Crs => self.theta_ccr,
            super::Technology::Vrs => self.theta_bcc,
        }
    }
}

/// `(θ·x₀ − s⁻, y₀ + s⁺)`.
pub fn project_to_frontier(result: &DeaResult, farm: &Farm) -> Projection {
    let theta = result.theta();
    Projection {
        inputs: farm
            .inputs
            .iter()
            .zip(&result.input_slacks)
            .map(|(x, s)| theta * x - s)
            .collect(),
        outputs: farm
            .outputs
            .iter()
            .zip(&result.output_slacks)
            .map(|(y, s)| y + s)
            .collect(),
    }
}
