use serde::{Deserialize, Serialize};

use super::DeaError;
use crate::lp::Tolerances;

/// Returns-to-scale assumption of the reference technology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technology {
    /// Constant returns to scale (CCR).
    Crs,
    /// Variable returns to scale (BCC), adds `Σλ = 1`.
    Vrs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Input,
    /// Only used to cross-check input-oriented scores.
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DeaConfig {
    /// Technology used for slacks, peers and projections.
    pub rts_assumption: Technology,
    pub orientation: Orientation,
    pub eps_eff: f64,
    pub eps_rts: f64,
    pub lp: Tolerances,
}

impl Default for DeaConfig {
    fn default() -> Self {
        DeaConfig {
            rts_assumption: Technology::Crs,
            orientation: Orientation::Input,
            eps_eff: 1e-6,
            eps_rts: 1e-6,
            lp: Tolerances::default(),
        }
    }
}

impl DeaConfig {
    pub fn validate(&self) -> Result<(), DeaError> {
        for (name, v) in [("eps_eff", self.eps_eff), ("eps_rts", self.eps_rts)] {
            if !(v > 0.0 && v < 1e-2) {
                return Err(DeaError::Config(format!("{name} = {v} must lie in (0, 0.01)")));
            }
        }
        Ok(())
    }
}
