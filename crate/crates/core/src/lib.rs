//! Farm efficiency benchmarking.
//!
//! First stage: input-oriented CCR and BCC envelopment programs per farm, with
//! max-slack analysis, scale efficiency and returns-to-scale labels robust to
//! alternate optima ([`dea`]), solved by a dense two-phase simplex ([`lp`]).
//!
//! Second stage: OLS regressions relating the scores to contextual factors,
//! either as a log-linear model of the score or as a Cobb-Douglas production
//! function of the score-adjusted output ([`second_stage`]).
//!
//! [`report`] turns results into tables rendered as Markdown, CSV or JSON.

pub mod data;
pub mod dea;
pub mod lp;
pub mod report;
pub mod second_stage;
pub mod stats;

pub use data::{load_dataset, Dataset, Farm, Schema};
pub use dea::{evaluate_all, DeaConfig, DeaError, DeaResult, EfficiencyStatus, FarmEvaluation, ReturnsToScale, Technology};
pub use lp::{solve_lp, LinearProgram, LpSolution, LpStatus};
pub use report::{render, Format, ReportTable};
pub use second_stage::{ModelKind, ModelSpec, RegressionError, RegressionFit, ThetaSource};
