use serde::{Deserialize, Serialize};

use super::ols::{fit_ols, FitKind, RegressionFit};
use super::RegressionError;
use crate::data::Dataset;
use crate::dea::{DeaResult, ReturnsToScale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    #[default]
    LogLinear,
    Integrated,
}

/// Which first-stage score feeds the second stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ThetaSource {
    #[default]
    Ccr,
    Bcc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub theta_source: ThetaSource,
    /// Contextual variables to include, by name. Empty means all of them in
    /// dataset order.
    pub variables: Vec<String>,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        ModelSpec {
            kind,
            ..ModelSpec::default()
        }
    }
}

pub fn theta_from_results(results: &[DeaResult], source: ThetaSource) -> Vec<f64> {
    results
        .iter()
        .map(|r| match source {
            ThetaSource::Ccr => r.theta_ccr,
            ThetaSource::Bcc => r.theta_bcc,
        })
        .collect()
}

fn check_theta(d: &Dataset, theta: &[f64]) -> Result<(), RegressionError> {
    if theta.len() != d.len() {
        return Err(RegressionError::Usage(format!(
            "{} scores for {} farms",
            theta.len(),
            d.len()
        )));
    }
    for (t, f) in theta.iter().zip(d.farms()) {
        if !(*t > 0.0 && *t <= 1.0 + 1e-9) {
            return Err(RegressionError::Domain(format!(
                "farm {}: score {t} outside (0, 1]",
                f.id
            )));
        }
    }
    Ok(())
}

/// Column indices into the farm context vector for the selected variables.
fn context_columns(d: &Dataset, spec: &ModelSpec) -> Result<Vec<(usize, String)>, RegressionError> {
    let names = d.context_names();
    if spec.variables.is_empty() {
        return Ok(names.into_iter().map(String::from).enumerate().collect());
    }
    spec.variables
        .iter()
        .map(|v| {
            names
                .iter()
                .position(|n| n == v)
                .map(|i| (i, v.clone()))
                .ok_or_else(|| RegressionError::Usage(format!("unknown contextual variable '{v}'")))
        })
        .collect()
}

fn expect_kind(spec: &ModelSpec, kind: ModelKind) -> Result<(), RegressionError> {
    if spec.kind != kind {
        return Err(RegressionError::Usage(format!(
            "model spec is {:?}, expected {kind:?}",
            spec.kind
        )));
    }
    Ok(())
}

/// Regresses `ln θ` on an intercept and the contextual codes.
///
/// Coefficients are reported as estimated; in a model written as
/// `ln θ = β₀ − Σ β_p z_p + ω` each `β_p` is the negated slope.
pub fn fit_log_linear(d: &Dataset, theta: &[f64], spec: &ModelSpec) -> Result<RegressionFit, RegressionError> {
    expect_kind(spec, ModelKind::LogLinear)?;
    check_theta(d, theta)?;
    let ctx = context_columns(d, spec)?;
    let mut names = vec!["Intercept".to_string()];
    names.extend(ctx.iter().map(|(_, n)| n.clone()));
    let x: Vec<Vec<f64>> = d
        .farms()
        .iter()
        .map(|f| {
            let mut row = vec![1.0];
            row.extend(ctx.iter().map(|(i, _)| f64::from(f.context[*i])));
            row
        })
        .collect();
    // θ = 1 gives exactly 0
    let y: Vec<f64> = theta.iter().map(|t| t.min(1.0).ln()).collect();
    let mut fit = fit_ols(&names, &x, &y)?;
    fit.kind = FitKind::LogLinear;
    Ok(fit)
}

/// Output divided by the efficiency score, `y* = y / θ`.
pub fn adjusted_output(d: &Dataset, theta: &[f64]) -> Result<Vec<f64>, RegressionError> {
    check_theta(d, theta)?;
    if d.num_outputs() != 1 {
        return Err(RegressionError::Usage(format!(
            "the production function model needs exactly one output, found {}",
            d.num_outputs()
        )));
    }
    Ok(d.farms()
        .iter()
        .zip(theta)
        .map(|(f, t)| f.outputs[0] / t.min(1.0))
        .collect())
}

/// Cobb-Douglas production function of the score-adjusted output:
/// `ln y* = β₀ + Σ δᵢ ln xᵢ + Σ β_p z_p + ε`.
pub fn fit_integrated_stochastic(
    d: &Dataset,
    theta: &[f64],
    spec: &ModelSpec,
) -> Result<RegressionFit, RegressionError> {
    expect_kind(spec, ModelKind::Integrated)?;
    let y_star = adjusted_output(d, theta)?;
    for f in d.farms() {
        if f.inputs.iter().chain(&f.outputs).any(|v| !(*v > 0.0)) {
            return Err(RegressionError::Domain(format!(
                "farm {}: inputs and output must be strictly positive for logs",
                f.id
            )));
        }
    }
    let ctx = context_columns(d, spec)?;
    let mut names = vec!["Intercept".to_string()];
    names.extend(d.input_names().iter().map(|n| format!("ln {n}")));
    names.extend(ctx.iter().map(|(_, n)| n.clone()));
    let x: Vec<Vec<f64>> = d
        .farms()
        .iter()
        .map(|f| {
            let mut row = vec![1.0];
            row.extend(f.inputs.iter().map(|v| v.ln()));
            row.extend(ctx.iter().map(|(i, _)| f64::from(f.context[*i])));
            row
        })
        .collect();
    let y: Vec<f64> = y_star.iter().map(|v| v.ln()).collect();
    let mut fit = fit_ols(&names, &x, &y)?;
    fit.kind = FitKind::Integrated;
    fit.log_inputs = d.num_inputs();
    Ok(fit)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndustryRts {
    pub value: f64,
    pub label: ReturnsToScale,
}

/// Sum of output elasticities; above 1 is increasing returns.
pub fn rts_from_elasticities(elasticities: &[f64]) -> IndustryRts {
    let value = elasticities.iter().sum();
    IndustryRts {
        value,
        label: ReturnsToScale::from_elasticity(value, 1e-9),
    }
}

pub fn industry_rts(fit: &RegressionFit) -> Result<IndustryRts, RegressionError> {
    if fit.kind != FitKind::Integrated {
        return Err(RegressionError::Usage(
            "industry returns to scale need the production function model".into(),
        ));
    }
    Ok(rts_from_elasticities(&fit.estimates[1..1 + fit.log_inputs]))
}
