//! Second-stage regressions of first-stage scores on contextual factors.

mod models;
mod ols;

pub use models::{
    adjusted_output, fit_integrated_stochastic, fit_log_linear, industry_rts, rts_from_elasticities,
    theta_from_results, IndustryRts, ModelKind, ModelSpec, ThetaSource,
};
pub use ols::{fit_ols, FitKind, RegressionFit};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegressionError {
    #[error("{n} observations are not enough for {p} coefficients")]
    SampleSize { n: usize, p: usize },
    #[error("collinear regressors: {column} is a linear combination of {}", depends_on.join(", "))]
    Collinear { column: String, depends_on: Vec<String> },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
}
