use std::collections::HashMap;

use super::{Cell, ReportError, ReportTable};
use crate::data::{Dataset, SummaryStats};
use crate::dea::{is_positive_slack, DeaResult, EfficiencyStatus, ReturnsToScale};
use crate::second_stage::{industry_rts, FitKind, RegressionFit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgePolicy {
    /// `(a, b]`; the first bin is `(0, b]`.
    #[default]
    RightClosed,
    /// `[a, b)`; the last bin also holds its upper edge.
    LeftClosed,
}

/// Upper edges of efficiency-score bins, ending at 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BinSpec {
    edges: Vec<f64>,
    policy: EdgePolicy,
}

impl Default for BinSpec {
    fn default() -> Self {
        BinSpec {
            edges: vec![0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
            policy: EdgePolicy::RightClosed,
        }
    }
}

impl BinSpec {
    pub fn new(edges: Vec<f64>, policy: EdgePolicy) -> Result<Self, ReportError> {
        if edges.is_empty() {
            return Err(ReportError::Bins("no edges".into()));
        }
        if edges.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) {
            return Err(ReportError::Bins("edges must lie in (0, 1]".into()));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ReportError::Bins("edges must be strictly increasing".into()));
        }
        if *edges.last().expect("non-empty") != 1.0 {
            return Err(ReportError::Bins("last edge must be 1".into()));
        }
        Ok(BinSpec { edges, policy })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Bin index of a score in `(0, 1]`.
    pub fn index(&self, score: f64) -> usize {
        let last = self.edges.len() - 1;
        match self.policy {
            EdgePolicy::RightClosed => self.edges.iter().position(|e| score <= *e).unwrap_or(last),
            EdgePolicy::LeftClosed => self.edges.iter().position(|e| score < *e).unwrap_or(last),
        }
    }

    pub fn label(&self, i: usize) -> String {
        let hi = self.edges[i];
        match (i, self.policy) {
            (0, EdgePolicy::RightClosed) => format!("<={hi:.2}"),
            (0, EdgePolicy::LeftClosed) => format!("<{hi:.2}"),
            _ => format!("{:.2}-{hi:.2}", self.edges[i - 1]),
        }
    }
}

fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, n) = values.into_iter().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Counts of scores per bin for each named column, plus a row of averages.
pub fn frequency_table(columns: &[(&str, Vec<f64>)], bins: &BinSpec) -> Result<ReportTable, ReportError> {
    let mut headers = vec!["Efficiency scores"];
    headers.extend(columns.iter().map(|(n, _)| *n));
    let mut t = ReportTable::new("Frequency distributions of efficiency scores", &headers);
    let mut counts = vec![vec![0i64; bins.len()]; columns.len()];
    for (c, (name, scores)) in columns.iter().enumerate() {
        for s in scores {
            if !(*s > 0.0 && *s <= 1.0) {
                return Err(ReportError::Domain(format!("{name} score {s} outside (0, 1]")));
            }
            counts[c][bins.index(*s)] += 1;
        }
    }
    for i in 0..bins.len() {
        let mut row = vec![Cell::Text(bins.label(i))];
        row.extend(counts.iter().map(|c| Cell::Int(c[i])));
        t.push_row(row)?;
    }
    let mut avg = vec![Cell::text("Average efficiency")];
    avg.extend(columns.iter().map(|(_, s)| Cell::num(mean(s.iter().copied()), 2)));
    t.push_row(avg)?;
    Ok(t)
}

/// [`frequency_table`] over the CCR, BCC and scale-efficiency columns.
pub fn score_frequency_table(results: &[DeaResult], bins: &BinSpec) -> Result<ReportTable, ReportError> {
    frequency_table(
        &[
            ("theta_CCR", results.iter().map(|r| r.theta_ccr).collect()),
            ("theta_BCC", results.iter().map(|r| r.theta_bcc).collect()),
            ("SE", results.iter().map(|r| r.scale_efficiency).collect()),
        ],
        bins,
    )
}

/// Per-farm scores, one row per farm followed by column averages.
pub fn results_table(results: &[DeaResult]) -> ReportTable {
    let mut t = ReportTable::new(
        "Farm specific efficiency scores",
        &["Farm", "theta_CCR", "theta_BCC", "SE", "sum_lambda", "RTS"],
    );
    for r in results {
        t.rows.push(vec![
            Cell::text(&r.farm_id),
            Cell::num(r.theta_ccr, 2),
            Cell::num(r.theta_bcc, 2),
            Cell::num(r.scale_efficiency, 2),
            Cell::num(r.sum_lambda, 2),
            Cell::text(r.rts.short()),
        ]);
    }
    t.rows.push(vec![
        Cell::text("Average"),
        Cell::num(mean(results.iter().map(|r| r.theta_ccr)), 2),
        Cell::num(mean(results.iter().map(|r| r.theta_bcc)), 2),
        Cell::num(mean(results.iter().map(|r| r.scale_efficiency)), 2),
        Cell::text(""),
        Cell::text(""),
    ]);
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum GroupKey {
    #[default]
    Governorate,
    /// A contextual variable by name; groups are its levels.
    Context(String),
}

fn group_of(d: &Dataset, key: &GroupKey, farm_id: &str) -> Result<Option<String>, ReportError> {
    let Some(farm) = d.index_of(farm_id).map(|k| d.farm(k)) else {
        return Ok(None);
    };
    match key {
        GroupKey::Governorate => Ok(farm.governorate.clone()),
        GroupKey::Context(name) => {
            let i = d
                .context_names()
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| ReportError::Domain(format!("unknown contextual variable '{name}'")))?;
            let code = farm.context[i];
            let level = d.codings()[i].levels.iter().find(|l| l.code == code);
            Ok(Some(match level {
                Some(l) => format!("{code}: {}", l.description),
                None => code.to_string(),
            }))
        }
    }
}

/// Mean scores and counts of efficient farms per group, in order of first
/// appearance. Farms without the attribute fall into `unknown`.
pub fn group_summary(results: &[DeaResult], d: &Dataset, key: &GroupKey) -> Result<ReportTable, ReportError> {
    let header = match key {
        GroupKey::Governorate => "Governorate".to_string(),
        GroupKey::Context(n) => n.clone(),
    };
    let mut t = ReportTable::new(
        "Average efficiency by group",
        &[&header, "Farms", "theta_CCR", "theta_BCC", "SE", "Efficient CRS", "Efficient VRS"],
    );
    let mut order: Vec<String> = Vec::new();
    let mut members: HashMap<String, Vec<&DeaResult>> = HashMap::new();
    for r in results {
        let g = group_of(d, key, &r.farm_id)?.unwrap_or_else(|| "unknown".into());
        if !members.contains_key(&g) {
            order.push(g.clone());
        }
        members.entry(g).or_default().push(r);
    }
    for g in order {
        let rs = &members[&g];
        let efficient = |s: fn(&DeaResult) -> EfficiencyStatus| {
            rs.iter().filter(|r| s(r) != EfficiencyStatus::Inefficient).count() as i64
        };
        t.push_row(vec![
            Cell::Text(g.clone()),
            Cell::Int(rs.len() as i64),
            Cell::num(mean(rs.iter().map(|r| r.theta_ccr)), 3),
            Cell::num(mean(rs.iter().map(|r| r.theta_bcc)), 3),
            Cell::num(mean(rs.iter().map(|r| r.scale_efficiency)), 3),
            Cell::Int(efficient(|r| r.ccr_status)),
            Cell::Int(efficient(|r| r.bcc_status)),
        ])?;
    }
    Ok(t)
}

/// Farm counts and mean first input and output by returns-to-scale class.
pub fn rts_summary(results: &[DeaResult], d: &Dataset) -> ReportTable {
    let size = d.input_names().first().cloned().unwrap_or_default();
    let output = d.output_names().first().cloned().unwrap_or_default();
    let size_header = format!("Mean {size}");
    let output_header = format!("Mean {output}");
    let mut t = ReportTable::new(
        "Characteristics of farms with respect to returns to scale",
        &["Scale", "Number of farms", &size_header, &output_header],
    );
    let classes = [
        ("Sub-optimal (IRS)", ReturnsToScale::Increasing),
        ("Optimal (CRS)", ReturnsToScale::Constant),
        ("Super-optimal (DRS)", ReturnsToScale::Decreasing),
    ];
    for (label, class) in classes {
        let farms: Vec<_> = results
            .iter()
            .filter(|r| r.rts == class)
            .filter_map(|r| d.index_of(&r.farm_id).map(|k| d.farm(k)))
            .collect();
        let row = if farms.is_empty() {
            vec![Cell::text(label), Cell::Missing, Cell::Missing, Cell::Missing]
        } else {
            vec![
                Cell::text(label),
                Cell::Int(farms.len() as i64),
                Cell::num(mean(farms.iter().map(|f| f.inputs[0])), 2),
                Cell::num(mean(farms.iter().map(|f| f.outputs[0])), 0),
            ]
        };
        t.rows.push(row);
    }
    t
}

/// Per input: farms with positive slack, their mean slack and mean use of
/// that input, and the excess share `mean slack / mean use × 100`.
pub fn slack_summary(results: &[DeaResult], d: &Dataset, eps: f64) -> ReportTable {
    let mut t = ReportTable::new(
        "Input slacks and farms using excess inputs",
        &["Input", "Number of farms", "Mean slack", "Mean input use", "Excess input use (%)"],
    );
    for (i, name) in d.input_names().iter().enumerate() {
        let mut slack = Vec::new();
        let mut used = Vec::new();
        for r in results {
            let Some(farm) = d.index_of(&r.farm_id).map(|k| d.farm(k)) else {
                continue;
            };
            let s = r.input_slacks[i];
            if is_positive_slack(s, farm.inputs[i], eps) {
                slack.push(s);
                used.push(farm.inputs[i]);
            }
        }
        let row = if slack.is_empty() {
            vec![
                Cell::text(name),
                Cell::Int(0),
                Cell::num(0.0, 2),
                Cell::num(0.0, 2),
                Cell::num(0.0, 1),
            ]
        } else {
            let ms = mean(slack.iter().copied());
            let mu = mean(used.iter().copied());
            vec![
                Cell::text(name),
                Cell::Int(slack.len() as i64),
                Cell::num(ms, 2),
                Cell::num(mu, 2),
                Cell::num(ms / mu * 100.0, 1),
            ]
        };
        t.rows.push(row);
    }
    t
}

fn significance(p: f64) -> &'static str {
    if p < 0.01 {
        "<1%"
    } else if p < 0.05 {
        "<5%"
    } else if p < 0.10 {
        "<10%"
    } else {
        ""
    }
}

/// Coefficient table with fit statistics appended as rows.
pub fn regression_table(fit: &RegressionFit) -> ReportTable {
    let title = match fit.kind {
        FitKind::Ols => "OLS regression",
        FitKind::LogLinear => "OLS regression of ln(theta) on contextual variables",
        FitKind::Integrated => "OLS regression of the integrated stochastic production model",
    };
    let mut t = ReportTable::new(title, &["Coefficients", "Value", "Std Error", "t value", "p-value", "Sig."]);
    for j in 0..fit.p {
        t.rows.push(vec![
            Cell::text(&fit.names[j]),
            Cell::Stat(fit.estimates[j]),
            Cell::Stat(fit.std_errors[j]),
            Cell::Stat(fit.t_values[j]),
            Cell::Stat(fit.p_values[j]),
            Cell::text(significance(fit.p_values[j])),
        ]);
    }
    let stat_row = |label: &str, v: f64| {
        vec![
            Cell::text(label),
            Cell::Stat(v),
            Cell::text(""),
            Cell::text(""),
            Cell::text(""),
            Cell::text(""),
        ]
    };
    t.rows.push(stat_row("R-square", fit.r_squared));
    t.rows.push(stat_row("R-square adjusted", fit.adj_r_squared));
    t.rows.push(stat_row("Overall significance", fit.overall_f_pvalue));
    t.footnote(format!("n = {}, coefficients = {}", fit.n, fit.p));
    if let Ok(rts) = industry_rts(fit) {
        t.footnote(format!(
            "Industry returns to scale: {} ({})",
            super::format_fixed(rts.value, 3),
            rts.label
        ));
    }
    t
}

/// Mean, standard deviation and range of every variable.
pub fn summary_table(stats: &SummaryStats) -> ReportTable {
    let mut t = ReportTable::new(
        format!("Summary statistics ({} farms)", stats.farms),
        &["Variable", "Role", "Mean", "SD", "Min.", "Max."],
    );
    let groups = [
        ("output", &stats.outputs),
        ("input", &stats.inputs),
        ("context", &stats.context),
    ];
    for (role, vars) in groups {
        for v in vars.iter() {
            t.rows.push(vec![
                Cell::text(&v.name),
                Cell::text(role),
                Cell::num(v.mean, 2),
                Cell::num(v.sd, 2),
                Cell::num(v.min, 2),
                Cell::num(v.max, 2),
            ]);
        }
    }
    t
}

/// Level descriptions and frequencies of the contextual variables.
pub fn context_table(d: &Dataset, stats: &SummaryStats) -> ReportTable {
    let mut t = ReportTable::new(
        "Characteristics of the farm specific variables",
        &["Variable", "Value", "Description", "Frequency"],
    );
    for (coding, freq) in d.codings().iter().zip(&stats.frequencies) {
        for (code, count) in &freq.counts {
            let description = coding
                .levels
                .iter()
                .find(|l| l.code == *code)
                .map_or(String::new(), |l| l.description.clone());
            t.rows.push(vec![
                Cell::text(&coding.variable),
                Cell::Int(i64::from(*code)),
                Cell::Text(description),
                Cell::Int(*count as i64),
            ]);
        }
    }
    t
}
