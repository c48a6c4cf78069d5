use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{DeaConfig, Orientation, Technology};
use super::envelopment::{radial, Reference};
use super::result::{project_to_frontier, DeaResult, EfficiencyStatus, Projection};
use super::scale::{classify_with, scale_efficiency};
use super::slacks::max_slack_with;
use super::DeaError;
use crate::data::Dataset;

/// Outcome for one farm of a batch run. Failures keep the farm id so the rest
/// of the batch can still be reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FarmEvaluation {
    Ok(Box<DeaResult>),
    Failed { farm_id: String, error: String },
}

impl FarmEvaluation {
    pub fn farm_id(&self) -> &str {
        match self {
            FarmEvaluation::Ok(r) => &r.farm_id,
            FarmEvaluation::Failed { farm_id, .. } => farm_id,
        }
    }

    pub fn result(&self) -> Option<&DeaResult> {
        match self {
            FarmEvaluation::Ok(r) => Some(r),
            FarmEvaluation::Failed { .. } => None,
        }
    }
}

fn clamp_score(theta: f64, eps: f64, stage: &str) -> Result<f64, DeaError> {
    if !(theta > 0.0) || theta > 1.0 + eps {
        return Err(DeaError::Inconsistent(format!("{stage} score {theta} outside (0, 1]")));
    }
    Ok(theta.min(1.0))
}

fn evaluate_with(d: &Dataset, reference: &Reference, k: usize, cfg: &DeaConfig) -> Result<DeaResult, DeaError> {
    let farm = d.farm(k);
    let ccr = radial(reference, k, Technology::Crs, Orientation::Input, &cfg.lp)?;
    let bcc = radial(reference, k, Technology::Vrs, Orientation::Input, &cfg.lp)?;
    let theta_ccr = clamp_score(ccr.score, cfg.eps_eff, "CCR")?;
    let theta_bcc = clamp_score(bcc.score, cfg.eps_eff, "BCC")?;
    let se = scale_efficiency(theta_ccr, theta_bcc, cfg.eps_eff)?;

    let ccr_slack = max_slack_with(reference, k, theta_ccr, Technology::Crs, &cfg.lp)?;
    let bcc_slack = max_slack_with(reference, k, theta_bcc, Technology::Vrs, &cfg.lp)?;
    let rts = classify_with(reference, k, theta_ccr, cfg.eps_rts, &cfg.lp)?;

    let ccr_status = EfficiencyStatus::classify(
        theta_ccr,
        farm,
        &ccr_slack.input_slacks,
        &ccr_slack.output_slacks,
        cfg.eps_eff,
    );
    let bcc_status = EfficiencyStatus::classify(
        theta_bcc,
        farm,
        &bcc_slack.input_slacks,
        &bcc_slack.output_slacks,
        cfg.eps_eff,
    );
    let chosen = match cfg.rts_assumption {
        Technology::Crs => ccr_slack,
        Technology::Vrs => bcc_slack,
    };
    let peers = chosen
        .lambda
        .iter()
        .zip(d.farms())
        .filter(|(l, _)| **l > cfg.eps_eff)
        .map(|(_, f)| f.id.clone())
        .collect();
    let mut result = DeaResult {
        farm_id: farm.id.clone(),
        theta_ccr,
        theta_bcc,
        scale_efficiency: se,
        technology: cfg.rts_assumption,
        sum_lambda: chosen.lambda.iter().sum(),
        lambda: chosen.lambda,
        sum_lambda_min: rts.sum_lambda_min,
        sum_lambda_max: rts.sum_lambda_max,
        input_slacks: chosen.input_slacks,
        output_slacks: chosen.output_slacks,
        peers,
        projection: Projection {
            inputs: vec![],
            outputs: vec![],
        },
        rts: rts.label,
        ccr_status,
        bcc_status,
    };
    result.projection = project_to_frontier(&result, farm);
    Ok(result)
}

/// Full first-stage evaluation of farm `k`.
pub fn evaluate_farm(d: &Dataset, k: usize, cfg: &DeaConfig) -> Result<DeaResult, DeaError> {
    cfg.validate()?;
    let reference = Reference::new(d);
    reference.check_index(k)?;
    evaluate_with(d, &reference, k, cfg)
}

fn check_batch_config(cfg: &DeaConfig) -> Result<(), DeaError> {
    cfg.validate()?;
    if cfg.orientation != Orientation::Input {
        return Err(DeaError::Config(
            "batch evaluation is input-oriented; output orientation is only a cross-check".into(),
        ));
    }
    Ok(())
}

fn wrap(d: &Dataset, k: usize, outcome: Result<DeaResult, DeaError>) -> FarmEvaluation {
    match outcome {
        Ok(r) => FarmEvaluation::Ok(Box::new(r)),
        Err(e) => FarmEvaluation::Failed {
            farm_id: d.farm(k).id.clone(),
            error: e.to_string(),
        },
    }
}

/// Evaluates every farm sequentially, in dataset order.
pub fn evaluate_all(d: &Dataset, cfg: &DeaConfig) -> Result<Vec<FarmEvaluation>, DeaError> {
    check_batch_config(cfg)?;
    let reference = Reference::new(d);
    Ok((0..d.len())
        .map(|k| wrap(d, k, evaluate_with(d, &reference, k, cfg)))
        .collect())
}

/// Evaluates every farm on up to `jobs` threads. The result is identical to
/// [`evaluate_all`] for any `jobs`.
pub fn evaluate_all_with_jobs(d: &Dataset, cfg: &DeaConfig, jobs: usize) -> Result<Vec<FarmEvaluation>, DeaError> {
    if jobs <= 1 {
        return evaluate_all(d, cfg);
    }
    check_batch_config(cfg)?;
    let reference = Reference::new(d);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| DeaError::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        (0..d.len())
            .into_par_iter()
            .map(|k| wrap(d, k, evaluate_with(d, &reference, k, cfg)))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dea::envelopment::fixtures::{five_farms, two_inputs};
    use crate::dea::ReturnsToScale;
    use approx::assert_abs_diff_eq;

    fn results(d: &Dataset) -> Vec<DeaResult> {
        evaluate_all(d, &DeaConfig::default())
            .unwrap()
            .into_iter()
            .map(|e| e.result().cloned().unwrap())
            .collect()
    }

    #[test]
    fn fixture_end_to_end() {
        let r = results(&five_farms());
        let ccr: Vec<f64> = r.iter().map(|x| x.theta_ccr).collect();
        let bcc: Vec<f64> = r.iter().map(|x| x.theta_bcc).collect();
        for (got, want) in ccr.iter().zip([0.5, 1.0, 0.5, 1.0, 0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
        for (got, want) in bcc.iter().zip([1.0, 1.0, 0.5, 1.0, 0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
        let efficient: Vec<&str> = r
            .iter()
            .filter(|x| x.ccr_status.is_efficient())
            .map(|x| x.farm_id.as_str())
            .collect();
        assert_eq!(efficient, ["A", "C"]);
        let labels: Vec<ReturnsToScale> = r.iter().map(|x| x.rts).collect();
        use ReturnsToScale::*;
        assert_eq!(labels, [Increasing, Constant, Constant, Constant, Constant]);
        assert_abs_diff_eq!(r[0].scale_efficiency, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn projection_of_b_lands_on_ray() {
        let r = results(&five_farms());
        let b = &r[2];
        assert_abs_diff_eq!(b.projection.inputs[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.projection.outputs[0], 4.0, epsilon = 1e-9);
        let a = &r[1];
        assert_abs_diff_eq!(a.projection.inputs[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(a.projection.outputs[0], 4.0, epsilon = 1e-9);
    }

    #[test]
    fn projection_of_q_is_p() {
        let r = results(&two_inputs());
        let q = &r[1];
        assert_eq!(q.ccr_status, EfficiencyStatus::WeaklyEfficient);
        assert_eq!(q.peers, ["P"]);
        assert_abs_diff_eq!(q.projection.inputs[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(q.projection.inputs[1], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(q.projection.outputs[0], 2.0, epsilon = 1e-9);
    }

    #[test]
    fn identical_farms_are_all_efficient() {
        let d = Dataset::from_matrices(&vec![vec![2.0, 3.0]; 4], &vec![vec![5.0]; 4]).unwrap();
        for r in results(&d) {
            assert_abs_diff_eq!(r.theta_ccr, 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(r.theta_bcc, 1.0, epsilon = 1e-9);
            assert_eq!(r.rts, ReturnsToScale::Constant);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let d = five_farms();
        let cfg = DeaConfig::default();
        assert_eq!(evaluate_all(&d, &cfg).unwrap(), evaluate_all_with_jobs(&d, &cfg, 4).unwrap());
    }

    #[test]
    fn output_orientation_rejected_for_batch() {
        let cfg = DeaConfig {
            orientation: Orientation::Output,
            ..DeaConfig::default()
        };
        assert!(matches!(evaluate_all(&five_farms(), &cfg), Err(DeaError::Config(_))));
    }

    #[test]
    fn vrs_selection_uses_bcc_weights() {
        let cfg = DeaConfig {
            rts_assumption: Technology::Vrs,
            ..DeaConfig::default()
        };
        let r = evaluate_farm(&five_farms(), 4, &cfg).unwrap();
        assert_abs_diff_eq!(r.sum_lambda, 1.0, epsilon = 1e-9);
        assert_eq!(r.peers, ["A", "C"]);
        assert_abs_diff_eq!(r.projection.inputs[0], 2.5, epsilon = 1e-9);
    }
}
