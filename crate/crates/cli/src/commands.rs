use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use farmeff_core::data::{
    generate_synthetic, load_dataset_lenient, summarize, validate_dataset, write_dataset, Severity, SyntheticTargets,
};
use farmeff_core::dea::{
    envelopment_program, evaluate_all_with_jobs, results_from_json, results_to_csv, results_to_json, DeaConfig,
    DeaResult, FarmEvaluation, Orientation, Technology,
};
use farmeff_core::report::{
    context_table, group_summary, regression_table, render, results_table, rts_summary, score_frequency_table,
    slack_summary, summary_table, BinSpec, Format, GroupKey, ReportTable,
};
use farmeff_core::second_stage::{
    adjusted_output, fit_integrated_stochastic, fit_log_linear, industry_rts, theta_from_results, ModelKind,
};
use farmeff_core::{load_dataset, Dataset};

use crate::args::{DeaArgs, InputArgs, RegressArgs, ReportArgs, SynthArgs, ValidateArgs};
use crate::config::RunConfig;
use crate::error::{Classify, CliError, Kind};

/// Files of one command, written together once everything has succeeded.
#[derive(Default)]
struct Outputs {
    files: Vec<(PathBuf, String)>,
}

impl Outputs {
    fn add(&mut self, name: impl Into<PathBuf>, content: String) {
        self.files.push((name.into(), content));
    }

    fn add_table(&mut self, stem: &str, table: &ReportTable, formats: &[Format]) {
        for f in formats {
            self.add(format!("{stem}.{}", f.extension()), render(table, *f));
        }
    }

    fn write(self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))
            .or_fail(Kind::Input)?;
        for (name, content) in self.files {
            let path = dir.join(name);
            std::fs::write(&path, content)
                .with_context(|| format!("writing {}", path.display()))
                .or_fail(Kind::Input)?;
        }
        Ok(())
    }
}

pub struct Session {
    pub config: RunConfig,
    pub verbose: bool,
}

impl Session {
    fn note(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn load(&self, args: &InputArgs) -> Result<Dataset, CliError> {
        let path = self.config.input(args).or_fail(Kind::Input)?;
        let schema = &self.config.schema;
        let d = if self.config.drop_incomplete(args) {
            let (d, dropped) = load_dataset_lenient(&path, schema)
                .with_context(|| format!("loading {}", path.display()))
                .or_fail(Kind::Input)?;
            for r in dropped {
                eprintln!("warning: row {} ({}) dropped: empty {}", r.row, r.id, r.column);
            }
            d
        } else {
            load_dataset(&path, schema)
                .with_context(|| format!("loading {}", path.display()))
                .or_fail(Kind::Input)?
        };
        self.note(format!(
            "loaded {} farms, {} inputs, {} outputs",
            d.len(),
            d.num_inputs(),
            d.num_outputs()
        ));
        Ok(d)
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn stdout(bytes: &[u8]) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(bytes).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).or_fail(Kind::Input),
        _ => Ok(()),
    }
}

/// Prints diagnostics; errors fail the command.
fn check(d: &Dataset) -> Result<(), CliError> {
    let mut errors = 0;
    for diag in validate_dataset(d) {
        match diag.severity {
            Severity::Warning => eprintln!("{diag}"),
            Severity::Error => {
                eprintln!("{diag}");
                errors += 1;
            }
        }
    }
    if errors > 0 {
        return Err(anyhow!("{errors} validation error(s)")).or_fail(Kind::Input);
    }
    Ok(())
}

pub fn validate(ctx: &Session, args: &ValidateArgs) -> Result<(), CliError> {
    let d = ctx.load(&args.input)?;
    check(&d)?;
    let stats = summarize(&d);
    let tables = [("summary", summary_table(&stats)), ("context", context_table(&d, &stats))];
    match ctx.config.out_dir(&args.output) {
        Ok(dir) => {
            let formats = ctx.config.formats(&args.output);
            let mut out = Outputs::default();
            for (stem, t) in &tables {
                out.add_table(stem, t, &formats);
            }
            out.write(&dir)
        }
        Err(_) => {
            let text: Vec<String> = tables.iter().map(|(_, t)| render(t, Format::Markdown)).collect();
            stdout(text.join("\n").as_bytes())
        }
    }
}

fn evaluate(ctx: &Session, d: &Dataset, cfg: &DeaConfig, jobs: usize) -> Result<Vec<FarmEvaluation>, CliError> {
    let results = evaluate_all_with_jobs(d, cfg, jobs).or_fail(Kind::Input)?;
    ctx.note(format!("evaluated {} farms on {jobs} thread(s)", results.len()));
    Ok(results)
}

/// Successful results in dataset order, or a solver error listing the failures.
fn completed(evals: &[FarmEvaluation]) -> Result<Vec<DeaResult>, CliError> {
    let mut ok = Vec::with_capacity(evals.len());
    let mut failed = Vec::new();
    for e in evals {
        match e {
            FarmEvaluation::Ok(r) => ok.push((**r).clone()),
            FarmEvaluation::Failed { farm_id, error } => {
                eprintln!("error: farm {farm_id}: {error}");
                failed.push(farm_id.clone());
            }
        }
    }
    if failed.is_empty() {
        Ok(ok)
    } else {
        Err(anyhow!("{} farm(s) could not be evaluated: {}", failed.len(), failed.join(", "))).or_fail(Kind::Solver)
    }
}

fn first_stage_tables(out: &mut Outputs, d: &Dataset, results: &[DeaResult], cfg: &DeaConfig, formats: &[Format]) {
    out.add_table("scores", &results_table(results), formats);
    let freq = score_frequency_table(results, &BinSpec::default()).expect("clamped scores lie in (0, 1]");
    out.add_table("frequency", &freq, formats);
    let groups = group_summary(results, d, &GroupKey::Governorate).expect("governorate grouping");
    out.add_table("groups", &groups, formats);
    out.add_table("rts", &rts_summary(results, d), formats);
    out.add_table("slacks", &slack_summary(results, d, cfg.eps_eff), formats);
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

pub fn dea(ctx: &Session, args: &DeaArgs) -> Result<(), CliError> {
    let d = ctx.load(&args.input)?;
    let dir = ctx.config.out_dir(&args.output).or_fail(Kind::Input)?;
    check(&d)?;
    let cfg = ctx.config.dea_config(&args.dea);
    cfg.validate().or_fail(Kind::Input)?;
    let evals = evaluate(ctx, &d, &cfg, ctx.config.jobs(&args.dea))?;

    let mut out = Outputs::default();
    out.add("results.json", results_to_json(&evals));
    out.add("results.csv", results_to_csv(&d, &evals).or_fail(Kind::Input)?);
    let outcome = completed(&evals);
    if let Ok(results) = &outcome {
        first_stage_tables(&mut out, &d, results, &cfg, &ctx.config.formats(&args.output));
    }
    out.write(&dir)?;

    if let Some(lp_dir) = &args.dump_lp {
        let mut lps = Outputs::default();
        for (k, f) in d.farms().iter().enumerate() {
            for (tech, tag) in [(Technology::Crs, "ccr"), (Technology::Vrs, "bcc")] {
                let lp = envelopment_program(&d, k, tech, Orientation::Input).or_fail(Kind::Solver)?;
                lps.add(format!("{}_{tag}.lp", sanitize(&f.id)), lp.to_string());
            }
        }
        lps.write(lp_dir)?;
    }
    outcome.map(|_| ())
}

/// Scores for the second stage, in dataset order.
fn scores_for(ctx: &Session, d: &Dataset, saved: Option<&Path>, args_jobs: usize, cfg: &DeaConfig) -> Result<Vec<DeaResult>, CliError> {
    let Some(path) = saved else {
        return completed(&evaluate(ctx, d, cfg, args_jobs)?);
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .or_fail(Kind::Input)?;
    let evals = results_from_json(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .or_fail(Kind::Input)?;
    let by_id: HashMap<&str, &FarmEvaluation> = evals.iter().map(|e| (e.farm_id(), e)).collect();
    let mut ordered = Vec::with_capacity(d.len());
    for f in d.farms() {
        let e = by_id
            .get(f.id.as_str())
            .ok_or_else(|| anyhow!("farm {} has no saved result in {}", f.id, path.display()))
            .or_fail(Kind::Input)?;
        ordered.push((*e).clone());
    }
    completed(&ordered)
}

pub fn regress(ctx: &Session, args: &RegressArgs) -> Result<(), CliError> {
    let d = ctx.load(&args.input)?;
    let dir = ctx.config.out_dir(&args.output).or_fail(Kind::Input)?;
    let cfg = ctx.config.dea_config(&args.dea);
    cfg.validate().or_fail(Kind::Input)?;
    let saved = args.dea_results.clone().or_else(|| ctx.config.dea_results.clone());
    let results = scores_for(ctx, &d, saved.as_deref(), ctx.config.jobs(&args.dea), &cfg)?;

    let base = ctx.config.model(args.theta_source, &args.variables);
    let theta = theta_from_results(&results, base.theta_source);
    let log_spec = farmeff_core::ModelSpec {
        kind: ModelKind::LogLinear,
        ..base.clone()
    };
    let int_spec = farmeff_core::ModelSpec {
        kind: ModelKind::Integrated,
        ..base
    };
    let log_fit = fit_log_linear(&d, &theta, &log_spec)
        .context("log-linear model")
        .or_fail(Kind::Regression)?;
    let int_fit = fit_integrated_stochastic(&d, &theta, &int_spec)
        .context("integrated model")
        .or_fail(Kind::Regression)?;
    let rts = industry_rts(&int_fit).or_fail(Kind::Regression)?;
    let y_star = adjusted_output(&d, &theta).or_fail(Kind::Regression)?;

    let formats = ctx.config.formats(&args.output);
    let mut out = Outputs::default();
    out.add_table("log_linear", &regression_table(&log_fit), &formats);
    out.add_table("integrated", &regression_table(&int_fit), &formats);
    let json = |v: &farmeff_core::RegressionFit| {
        let mut s = serde_json::to_string_pretty(v).expect("fits serialize");
        s.push('\n');
        s
    };
    out.add("log_linear_fit.json", json(&log_fit));
    out.add("integrated_fit.json", json(&int_fit));
    let line = format!(
        "industry returns to scale: {} ({})\n",
        farmeff_core::report::format_fixed(rts.value, 3),
        rts.label
    );
    out.add("industry_rts.txt", line.clone());
    let mut data = String::from("id,y,theta,y_star\n");
    for ((f, t), ys) in d.farms().iter().zip(&theta).zip(&y_star) {
        writeln!(data, "{},{},{},{}", f.id, f.outputs[0], t, ys).expect("string write");
    }
    out.add("integrated_data.csv", data);
    out.write(&dir)?;
    stdout(line.as_bytes())
}

pub fn report(ctx: &Session, args: &ReportArgs) -> Result<(), CliError> {
    let d = ctx.load(&args.input)?;
    let dir = ctx.config.out_dir(&args.output).or_fail(Kind::Input)?;
    let cfg = ctx.config.dea_config(&args.dea);
    cfg.validate().or_fail(Kind::Input)?;
    let saved = args.dea_results.clone().or_else(|| ctx.config.dea_results.clone());
    let results = scores_for(ctx, &d, saved.as_deref(), ctx.config.jobs(&args.dea), &cfg)?;
    let mut out = Outputs::default();
    first_stage_tables(&mut out, &d, &results, &cfg, &ctx.config.formats(&args.output));
    out.write(&dir)
}

pub fn synth(ctx: &Session, args: &SynthArgs) -> Result<(), CliError> {
    let s = &ctx.config.synth;
    let farms = args
        .farms
        .or(s.farms)
        .ok_or_else(|| anyhow!("--farms is required"))
        .or_fail(Kind::Input)?;
    let seed = args.seed.or(s.seed).unwrap_or(0);
    let d = generate_synthetic(farms, seed, &SyntheticTargets::default()).or_fail(Kind::Input)?;
    let mut buf = Vec::new();
    write_dataset(&d, &mut buf).or_fail(Kind::Input)?;
    match args.out.clone().or_else(|| s.out.clone()) {
        Some(path) => std::fs::write(&path, buf)
            .with_context(|| format!("writing {}", path.display()))
            .or_fail(Kind::Input)?,
        None => stdout(&buf)?,
    }
    ctx.note(format!("wrote {farms} farms (seed {seed})"));
    Ok(())
}
