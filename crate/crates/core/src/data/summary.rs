use serde::{Deserialize, Serialize};

use super::farm::Dataset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSummary {
    pub name: String,
    pub mean: f64,
    /// Sample standard deviation (K−1 denominator); 0 for a single farm.
    pub sd: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoricalFrequency {
    pub variable: String,
    /// `(code, count)` for every level of the coding, zero-filled.
    pub counts: Vec<(u8, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub farms: usize,
    pub outputs: Vec<VariableSummary>,
    pub inputs: Vec<VariableSummary>,
    /// Categorical codes summarised as numbers.
    pub context: Vec<VariableSummary>,
    pub frequencies: Vec<CategoricalFrequency>,
}

pub(crate) fn describe(name: &str, values: &[f64]) -> VariableSummary {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let sd = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    VariableSummary {
        name: name.to_string(),
        mean,
        sd,
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

pub fn summarize(d: &Dataset) -> SummaryStats {
    let column = |get: &dyn Fn(usize) -> f64| -> Vec<f64> { (0..d.len()).map(get).collect() };
    let outputs = d
        .output_names()
        .iter()
        .enumerate()
        .map(|(j, name)| describe(name, &column(&|k| d.farm(k).outputs[j])))
        .collect();
    let inputs = d
        .input_names()
        .iter()
        .enumerate()
        .map(|(i, name)| describe(name, &column(&|k| d.farm(k).inputs[i])))
        .collect();
    let context = d
        .codings()
        .iter()
        .enumerate()
        .map(|(p, c)| describe(&c.variable, &column(&|k| d.farm(k).context[p] as f64)))
        .collect();
    let frequencies = d
        .codings()
        .iter()
        .enumerate()
        .map(|(p, c)| CategoricalFrequency {
            variable: c.variable.clone(),
            counts: c
                .levels
                .iter()
                .map(|l| (l.code, d.farms().iter().filter(|f| f.context[p] == l.code).count()))
                .collect(),
        })
        .collect();
    SummaryStats {
        farms: d.len(),
        outputs,
        inputs,
        context,
        frequencies,
    }
}
