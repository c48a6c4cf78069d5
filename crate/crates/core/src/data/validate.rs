use std::fmt;

use serde::{Deserialize, Serialize};

use super::farm::Dataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 1-based data row (header excluded), when the finding concerns one farm.
    pub row: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    fn error(row: Option<usize>, message: String) -> Self {
        Diagnostic {
            severity: Severity::Error,
            row,
            message,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        match self.row {
            Some(r) => write!(f, "{level}: row {r}: {}", self.message),
            None => write!(f, "{level}: {}", self.message),
        }
    }
}

/// Minimum number of farms for `n` inputs and `m` outputs to discriminate
/// efficiency: `max(M·N, 3·(M+N))`.
pub fn discrimination_threshold(n: usize, m: usize) -> usize {
    (m * n).max(3 * (m + n))
}

/// Checks a dataset. An empty result means the dataset is valid.
pub fn validate_dataset(d: &Dataset) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let k = d.len();
    let n = d.num_inputs();
    let m = d.num_outputs();

    if k == 0 {
        out.push(Diagnostic::error(None, "dataset has no farms".into()));
    }
    if n == 0 || m == 0 {
        out.push(Diagnostic::error(
            None,
            format!("need at least one input and one output (N={n}, M={m})"),
        ));
    }
    for coding in d.codings() {
        if !coding.is_well_formed() {
            out.push(Diagnostic::error(
                None,
                format!("coding `{}` is malformed", coding.variable),
            ));
        }
    }

    for (idx, farm) in d.farms().iter().enumerate() {
        let row = Some(idx + 1);
        if farm.inputs.len() != n || farm.outputs.len() != m || farm.context.len() != d.codings().len() {
            out.push(Diagnostic::error(
                row,
                format!(
                    "farm `{}` has {}/{}/{} inputs/outputs/context values, expected {n}/{m}/{}",
                    farm.id,
                    farm.inputs.len(),
                    farm.outputs.len(),
                    farm.context.len(),
                    d.codings().len()
                ),
            ));
            continue;
        }
        let named = d
            .input_names()
            .iter()
            .zip(&farm.inputs)
            .chain(d.output_names().iter().zip(&farm.outputs));
        for (name, &v) in named {
            if !(v.is_finite() && v > 0.0) {
                out.push(Diagnostic::error(
                    row,
                    format!("`{name}` = {v} must be strictly positive and finite"),
                ));
            }
        }
        for (coding, &code) in d.codings().iter().zip(&farm.context) {
            if !coding.contains(code as i64) {
                out.push(Diagnostic::error(
                    row,
                    format!(
                        "`{}` code {code} outside 1..={}",
                        coding.variable,
                        coding.max_code()
                    ),
                ));
            }
        }
    }
    for (idx, id) in d.duplicate_ids() {
        out.push(Diagnostic::error(Some(idx + 1), format!("duplicate farm id `{id}`")));
    }

    let threshold = discrimination_threshold(n, m);
    if k > 0 && k < threshold {
        out.push(Diagnostic {
            severity: Severity::Warning,
            row: None,
            message: format!(
                "K={k} < {threshold}: too few farms to discriminate {n} inputs and {m} outputs \
                 (need K >= max(M*N, 3(M+N)))"
            ),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Farm;

    fn uniform(k: usize, n: usize, m: usize) -> Dataset {
        let inputs = vec![vec![1.0; n]; k];
        let outputs = vec![vec![1.0; m]; k];
        let farms = (0..k)
            .map(|i| Farm {
                id: format!("f{i}"),
                governorate: None,
                inputs: inputs[i].clone(),
                outputs: outputs[i].clone(),
                context: vec![],
            })
            .collect();
        Dataset::from_parts_unchecked(
            (0..n).map(|i| format!("x{i}")).collect(),
            (0..m).map(|j| format!("y{j}")).collect(),
            vec![],
            farms,
        )
    }

    #[test]
    fn fourteen_crops_need_196_farms() {
        let diags = validate_dataset(&uniform(45, 14, 14));
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert!(diags[0].message.contains("K=45 < 196"), "{}", diags[0].message);
    }

    #[test]
    fn aggregated_variables_pass() {
        assert!(validate_dataset(&uniform(45, 3, 1)).is_empty());
    }

    #[test]
    fn eleven_farms_is_below_threshold() {
        assert_eq!(discrimination_threshold(3, 1), 12);
        let diags = validate_dataset(&uniform(11, 3, 1));
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("K=11 < 12"));
        assert!(validate_dataset(&uniform(12, 3, 1)).is_empty());
    }

    #[test]
    fn invariant_violations_are_errors() {
        let mut d = uniform(12, 3, 1);
        let mut farms = d.farms().to_vec();
        farms[2].inputs[1] = 0.0;
        farms[4].id = "f0".into();
        d = Dataset::from_parts_unchecked(
            d.input_names().to_vec(),
            d.output_names().to_vec(),
            vec![],
            farms,
        );
        let diags = validate_dataset(&d);
        assert_eq!(diags.len(), 2);
        assert!(diags.iter().all(|x| x.severity == Severity::Error));
        assert_eq!(diags[0].row, Some(3));
        assert_eq!(diags[1].row, Some(5));
    }
}
