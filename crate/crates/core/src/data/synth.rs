use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::coding::{farm_specific_codings, CategoricalCoding};
use super::farm::{DataError, Dataset, Farm};

/// Target mean and standard deviation of a positive variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTarget {
    pub name: String,
    pub mean: f64,
    pub sd: f64,
}

impl MomentTarget {
    pub fn new(name: &str, mean: f64, sd: f64) -> Self {
        MomentTarget {
            name: name.into(),
            mean,
            sd,
        }
    }
}

/// Categorical variable drawn with probabilities proportional to `weights`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextTarget {
    pub coding: CategoricalCoding,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticTargets {
    pub outputs: Vec<MomentTarget>,
    pub inputs: Vec<MomentTarget>,
    pub context: Vec<ContextTarget>,
    pub governorates: Vec<(String, f64)>,
}

impl Default for SyntheticTargets {
    /// Calibrated to the Batinah survey: 45 farms, revenue in $/year, cropped
    /// area in hectares, labour in hours/year, electricity in $/year.
    fn default() -> Self {
        let weights: [&[f64]; 5] = [
            &[14.0, 16.0, 15.0],
            &[16.0, 13.0, 16.0],
            &[0.0, 37.0, 6.0, 2.0],
            &[10.0, 10.0, 15.0, 7.0, 3.0],
            &[5.0, 24.0, 16.0],
        ];
        SyntheticTargets {
            outputs: vec![MomentTarget::new("revenue", 7601.0, 14111.0)],
            inputs: vec![
                MomentTarget::new("cropped_area", 2.94, 4.57),
                MomentTarget::new("labour", 1496.0, 1109.0),
                MomentTarget::new("electricity", 322.0, 266.0),
            ],
            context: farm_specific_codings()
                .into_iter()
                .zip(weights)
                .map(|(coding, w)| ContextTarget {
                    coding,
                    weights: w.to_vec(),
                })
                .collect(),
            governorates: vec![
                ("Barka".into(), 15.0),
                ("Musanaa".into(), 16.0),
                ("Suwaiq".into(), 5.0),
                ("Shinas".into(), 9.0),
            ],
        }
    }
}

impl SyntheticTargets {
    fn check(&self, k: usize) -> Result<(), DataError> {
        if k == 0 {
            return Err(DataError::Parameter("farm count must be at least 1".into()));
        }
        for t in self.outputs.iter().chain(&self.inputs) {
            if !(t.mean > 0.0 && t.mean.is_finite() && t.sd >= 0.0 && t.sd.is_finite()) {
                return Err(DataError::Parameter(format!(
                    "target for `{}` needs positive mean and non-negative sd",
                    t.name
                )));
            }
            if k == 1 && t.sd > 0.0 {
                return Err(DataError::Parameter(format!(
                    "cannot hit sd {} for `{}` with a single farm",
                    t.sd, t.name
                )));
            }
        }
        for c in &self.context {
            if c.weights.len() != c.coding.levels.len() {
                return Err(DataError::Parameter(format!(
                    "`{}` has {} weights for {} levels",
                    c.coding.variable,
                    c.weights.len(),
                    c.coding.levels.len()
                )));
            }
        }
        Ok(())
    }
}

/// Log-normal column whose log-scale sample moments are exact and whose
/// arithmetic sample mean equals the target.
fn lognormal_column(rng: &mut ChaCha8Rng, k: usize, target: &MomentTarget) -> Vec<f64> {
    let mut z: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
    if k > 1 {
        let mean = z.iter().sum::<f64>() / k as f64;
        let sd = (z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k as f64 - 1.0)).sqrt();
        for v in &mut z {
            *v = if sd > 0.0 { (*v - mean) / sd } else { 0.0 };
        }
    }
    let cv = target.sd / target.mean;
    let sigma2 = (1.0 + cv * cv).ln();
    let mu = target.mean.ln() - sigma2 / 2.0;
    let mut x: Vec<f64> = z.iter().map(|v| (mu + sigma2.sqrt() * v).exp()).collect();
    let rescale = target.mean / (x.iter().sum::<f64>() / k as f64);
    for v in &mut x {
        *v *= rescale;
    }
    x
}

/// Draws `k` farms deterministically from `seed`.
pub fn generate_synthetic(k: usize, seed: u64, targets: &SyntheticTargets) -> Result<Dataset, DataError> {
    targets.check(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outputs: Vec<Vec<f64>> = targets.outputs.iter().map(|t| lognormal_column(&mut rng, k, t)).collect();
    let inputs: Vec<Vec<f64>> = targets.inputs.iter().map(|t| lognormal_column(&mut rng, k, t)).collect();

    let mut context = Vec::with_capacity(targets.context.len());
    for c in &targets.context {
        let dist = WeightedIndex::new(&c.weights)
            .map_err(|e| DataError::Parameter(format!("`{}` weights: {e}", c.coding.variable)))?;
        context.push((0..k).map(|_| (dist.sample(&mut rng) + 1) as u8).collect::<Vec<_>>());
    }
    let governorates: Vec<Option<String>> = if targets.governorates.is_empty() {
        vec![None; k]
    } else {
        let dist = WeightedIndex::new(targets.governorates.iter().map(|(_, w)| *w))
            .map_err(|e| DataError::Parameter(format!("governorate weights: {e}")))?;
        (0..k)
            .map(|_| Some(targets.governorates[dist.sample(&mut rng)].0.clone()))
            .collect()
    };

    let farms = (0..k)
        .map(|f| Farm {
            id: format!("F{:03}", f + 1),
            governorate: governorates[f].clone(),
            inputs: inputs.iter().map(|col| col[f]).collect(),
            outputs: outputs.iter().map(|col| col[f]).collect(),
            context: context.iter().map(|col| col[f]).collect(),
        })
        .collect();
    Dataset::new(
        targets.inputs.iter().map(|t| t.name.clone()).collect(),
        targets.outputs.iter().map(|t| t.name.clone()).collect(),
        targets.context.iter().map(|c| c.coding.clone()).collect(),
        farms,
    )
}
