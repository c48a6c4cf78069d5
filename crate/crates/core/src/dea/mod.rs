//! Envelopment analysis of farms.
//!
//! Every farm is scored with the input-oriented CCR (constant returns) and BCC
//! (variable returns) programs. A second max-slack program with the radial
//! score held at its optimum gives slacks, peers and the frontier projection.
//! Returns to scale come from the range of `Σλ` over all optimal CCR
//! solutions, not from whichever optimum the solver happens to return.

mod batch;
mod config;
mod envelopment;
mod export;
mod result;
mod scale;
mod slacks;

pub use batch::{evaluate_all, evaluate_all_with_jobs, evaluate_farm, FarmEvaluation};
pub use config::{DeaConfig, Orientation, Technology};
pub use envelopment::{
    envelopment_program, evaluate_bcc, evaluate_ccr, evaluate_output_expansion, RadialSolution,
};
pub use export::{results_from_json, results_to_csv, results_to_json};
pub use result::{project_to_frontier, DeaResult, EfficiencyStatus, Projection};
pub use scale::{classify_returns_to_scale, scale_efficiency, ReturnsToScale, RtsClassification};
pub use slacks::{is_positive_slack, max_slack_phase, MaxSlackSolution};

use thiserror::Error;

use crate::lp::{LpError, LpStatus};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeaError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("farm index {index} out of range for {len} farms")]
    FarmIndex { index: usize, len: usize },
    #[error("malformed program: {0}")]
    Lp(LpError),
    #[error("{stage} program ended with status {status:?}")]
    Solver { stage: &'static str, status: LpStatus },
    #[error("inconsistent scores: {0}")]
    Inconsistent(String),
}

impl From<LpError> for DeaError {
    fn from(e: LpError) -> Self {
        DeaError::Lp(e)
    }
}
