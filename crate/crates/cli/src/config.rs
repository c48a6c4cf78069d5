use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use farmeff_core::dea::{DeaConfig, Technology};
use farmeff_core::report::Format;
use farmeff_core::second_stage::{ModelSpec, ThetaSource};
use farmeff_core::Schema;
use serde::Deserialize;

use crate::args::{DeaOptions, InputArgs, OutputArgs, RtsArg, ThetaArg};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub farms: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Contents of the `--config` file. Command-line flags and environment
/// variables take precedence over every value here.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub formats: Option<Vec<Format>>,
    pub jobs: Option<usize>,
    pub drop_incomplete: Option<bool>,
    pub dea_results: Option<PathBuf>,
    pub schema: Schema,
    pub dea: DeaConfig,
    pub model: ModelSpec,
    pub synth: SynthSection,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<RunConfig> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn input(&self, args: &InputArgs) -> anyhow::Result<PathBuf> {
        match args.input.clone().or_else(|| self.input.clone()) {
            Some(p) if !p.as_os_str().is_empty() => Ok(p),
            _ => bail!("no input file given (--input or `input` in the config file)"),
        }
    }

    pub fn drop_incomplete(&self, args: &InputArgs) -> bool {
        args.drop_incomplete || self.drop_incomplete.unwrap_or(false)
    }

    pub fn out_dir(&self, args: &OutputArgs) -> anyhow::Result<PathBuf> {
        match args.out.clone().or_else(|| self.out.clone()) {
            Some(p) if !p.as_os_str().is_empty() => Ok(p),
            _ => bail!("no output directory given (--out or `out` in the config file)"),
        }
    }

    pub fn formats(&self, args: &OutputArgs) -> Vec<Format> {
        let mut formats = if !args.format.is_empty() {
            args.format.clone()
        } else {
            self.formats.clone().unwrap_or_else(|| vec![Format::Markdown, Format::Csv])
        };
        formats.sort_by_key(|f| f.extension());
        formats.dedup();
        formats
    }

    pub fn jobs(&self, args: &DeaOptions) -> usize {
        args.jobs.or(self.jobs).unwrap_or(1).max(1)
    }

    pub fn dea_config(&self, args: &DeaOptions) -> DeaConfig {
        let mut cfg = self.dea;
        if let Some(v) = args.tol_eff {
            cfg.eps_eff = v;
        }
        if let Some(v) = args.tol_rts {
            cfg.eps_rts = v;
        }
        if let Some(r) = args.rts {
            cfg.rts_assumption = match r {
                RtsArg::Crs => Technology::Crs,
                RtsArg::Vrs => Technology::Vrs,
            };
        }
        cfg
    }

    pub fn model(&self, theta: Option<ThetaArg>, variables: &[String]) -> ModelSpec {
        let mut spec = self.model.clone();
        if let Some(t) = theta {
            spec.theta_source = match t {
                ThetaArg::Ccr => ThetaSource::Ccr,
                ThetaArg::Bcc => ThetaSource::Bcc,
            };
        }
        if !variables.is_empty() {
            spec.variables = variables.to_vec();
        }
        spec
    }
}
