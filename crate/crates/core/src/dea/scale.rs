use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::DeaConfig;
use super::envelopment::Reference;
use super::slacks::with_fixed_theta;
use super::DeaError;
use crate::data::Dataset;
use crate::lp::{LinearProgram, Sense, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReturnsToScale {
    Increasing,
    Constant,
    Decreasing,
}

impl ReturnsToScale {
    /// Label for a scale elasticity: above 1 is increasing.
    pub fn from_elasticity(value: f64, eps: f64) -> Self {
        if value > 1.0 + eps {
            ReturnsToScale::Increasing
        } else if value < 1.0 - eps {
            ReturnsToScale::Decreasing
        } else {
            ReturnsToScale::Constant
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            ReturnsToScale::Increasing => "incr.",
            ReturnsToScale::Constant => "const.",
            ReturnsToScale::Decreasing => "decr.",
        }
    }
}

impl fmt::Display for ReturnsToScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReturnsToScale::Increasing => "increasing",
            ReturnsToScale::Constant => "constant",
            ReturnsToScale::Decreasing => "decreasing",
        })
    }
}

/// `θ_CCR / θ_BCC`, clamped to `(0, 1]`.
pub fn scale_efficiency(theta_ccr: f64, theta_bcc: f64, eps: f64) -> Result<f64, DeaError> {
    if !(theta_ccr > 0.0 && theta_bcc > 0.0) {
        return Err(DeaError::Inconsistent(format!(
            "scores must be positive (CCR {theta_ccr}, BCC {theta_bcc})"
        )));
    }
    let ratio = theta_ccr / theta_bcc;
    if ratio > 1.0 + eps {
        return Err(DeaError::Inconsistent(format!(
            "CCR score {theta_ccr} exceeds BCC score {theta_bcc}"
        )));
    }
    Ok(ratio.min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RtsClassification {
    pub label: ReturnsToScale,
    pub sum_lambda_min: f64,
    pub sum_lambda_max: f64,
}

impl RtsClassification {
    /// Constant when `[min, max]` touches 1 within `eps`.
    pub fn from_interval(min: f64, max: f64, eps: f64) -> Self {
        let label = if max < 1.0 - eps {
            ReturnsToScale::Increasing
        } else if min > 1.0 + eps {
            ReturnsToScale::Decreasing
        } else {
            ReturnsToScale::Constant
        };
        RtsClassification {
            label,
            sum_lambda_min: min,
            sum_lambda_max: max,
        }
    }
}

pub(crate) fn classify_with(
    reference: &Reference,
    k: usize,
    theta_ccr: f64,
    eps_rts: f64,
    tol: &Tolerances,
) -> Result<RtsClassification, DeaError> {
    reference.check_index(k)?;
    let farms = reference.farms();
    let build = |sign: f64| {
        move |theta: f64| {
            let mut lp = LinearProgram::minimize(vec![sign; farms]);
            for row in &reference.x {
                lp.constraint(row.clone(), Sense::Le, theta * row[k]);
            }
            for row in &reference.y {
                lp.constraint(row.clone(), Sense::Ge, row[k]);
            }
            lp
        }
    };
    let low = with_fixed_theta(theta_ccr, tol, "min-sum-lambda", build(1.0))?;
    let high = with_fixed_theta(theta_ccr, tol, "max-sum-lambda", build(-1.0))?;
    let min: f64 = low.values.iter().sum();
    let max: f64 = high.values.iter().sum();
    Ok(RtsClassification::from_interval(min, max.max(min), eps_rts))
}

/// Range of `Σλ` over all optimal CCR solutions and the resulting label.
pub fn classify_returns_to_scale(
    d: &Dataset,
    k: usize,
    theta_ccr: f64,
    cfg: &DeaConfig,
) -> Result<RtsClassification, DeaError> {
    classify_with(&Reference::new(d), k, theta_ccr, cfg.eps_rts, &cfg.lp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dea::envelopment::fixtures::five_farms;
    use crate::dea::evaluate_ccr;
    use approx::assert_abs_diff_eq;

    fn round2(v: f64) -> f64 {
        (v * 100.0).round() / 100.0
    }

    #[test]
    fn published_scale_efficiencies() {
        assert_abs_diff_eq!(round2(scale_efficiency(0.22, 0.54, 1e-6).unwrap()), 0.41);
        let se = scale_efficiency(0.49, 0.61, 1e-6).unwrap();
        assert!((0.80..=0.81).contains(&round2(se)), "{se}");
        assert_eq!(scale_efficiency(1.0, 1.0, 1e-6).unwrap(), 1.0);
    }

    #[test]
    fn ccr_above_bcc_is_an_error() {
        assert!(matches!(scale_efficiency(0.9, 0.8, 1e-6), Err(DeaError::Inconsistent(_))));
        assert_eq!(scale_efficiency(1.0 + 1e-9, 1.0, 1e-6).unwrap(), 1.0);
    }

    fn classify(k: usize) -> RtsClassification {
        let d = five_farms();
        let cfg = DeaConfig::default();
        let theta = evaluate_ccr(&d, k, &cfg).unwrap().score;
        classify_returns_to_scale(&d, k, theta, &cfg).unwrap()
    }

    #[test]
    fn small_farm_is_increasing() {
        // E can be referenced by A (Σλ = 1/4) or C (Σλ = 1/6)
        let e = classify(0);
        assert_eq!(e.label, ReturnsToScale::Increasing);
        assert_abs_diff_eq!(e.sum_lambda_min, 1.0 / 6.0, epsilon = 1e-9);
        assert_abs_diff_eq!(e.sum_lambda_max, 0.25, epsilon = 1e-9);
    }

    #[test]
    fn alternate_optima_spanning_one_are_constant() {
        let d = classify(4);
        assert_eq!(d.label, ReturnsToScale::Constant);
        assert_abs_diff_eq!(d.sum_lambda_min, 5.0 / 6.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d.sum_lambda_max, 1.25, epsilon = 1e-9);
        let b = classify(2);
        assert_eq!(b.label, ReturnsToScale::Constant);
        assert_abs_diff_eq!(b.sum_lambda_min, 2.0 / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.sum_lambda_max, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_interval_at_one_is_constant() {
        let r = RtsClassification::from_interval(1.0, 1.0, 1e-6);
        assert_eq!(r.label, ReturnsToScale::Constant);
        assert_eq!(
            RtsClassification::from_interval(1.2, 1.5, 1e-6).label,
            ReturnsToScale::Decreasing
        );
    }

    #[test]
    fn elasticity_labels() {
        assert_eq!(ReturnsToScale::from_elasticity(1.671, 1e-9), ReturnsToScale::Increasing);
        assert_eq!(ReturnsToScale::from_elasticity(0.6, 1e-9), ReturnsToScale::Decreasing);
        assert_eq!(ReturnsToScale::from_elasticity(1.0, 1e-9), ReturnsToScale::Constant);
    }
}
