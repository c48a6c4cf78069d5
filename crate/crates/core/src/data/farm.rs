use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::coding::CategoricalCoding;
use super::validate::{validate_dataset, Severity};

#[derive(Debug, Error)]
pub enum DataError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("schema error: column `{0}` not found in header")]
    MissingColumn(String),
    #[error("schema error: unknown categorical variable `{0}`")]
    UnknownCoding(String),
    #[error("row {row}: missing value for `{column}`")]
    MissingValue { row: usize, column: String },
    #[error("row {row}: `{column}` = `{value}` is not a number")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },
    #[error("row {row}: `{column}` = {value} must be strictly positive and finite")]
    NonPositive {
        row: usize,
        column: String,
        value: f64,
    },
    #[error("row {row}: `{column}` code {code} outside 1..={max}")]
    CodeOutOfRange {
        row: usize,
        column: String,
        code: i64,
        max: u8,
    },
    #[error("row {row}: duplicate farm id `{id}`")]
    DuplicateId { row: usize, id: String },
    #[error("invalid dataset: {0}")]
    Invalid(String),
    #[error("parameter error: {0}")]
    Parameter(String),
}

/// One decision-making unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Farm {
    pub id: String,
    pub governorate: Option<String>,
    pub inputs: Vec<f64>,
    pub outputs: Vec<f64>,
    /// Categorical codes, one per coding of the owning dataset.
    pub context: Vec<u8>,
}

/// An immutable evaluation population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    farms: Vec<Farm>,
    input_names: Vec<String>,
    output_names: Vec<String>,
    context: Vec<CategoricalCoding>,
}

impl Dataset {
    /// Builds a dataset, rejecting anything `validate_dataset` flags as an error.
    pub fn new(
        input_names: Vec<String>,
        output_names: Vec<String>,
        context: Vec<CategoricalCoding>,
        farms: Vec<Farm>,
    ) -> Result<Self, DataError> {
        let d = Self::from_parts_unchecked(input_names, output_names, context, farms);
        let errors: Vec<String> = validate_dataset(&d)
            .into_iter()
            .filter(|diag| diag.severity == Severity::Error)
            .map(|diag| diag.to_string())
            .collect();
        if errors.is_empty() {
            Ok(d)
        } else {
            Err(DataError::Invalid(errors.join("; ")))
        }
    }

    /// Builds a dataset with no checks. Intended for diagnostics and tests.
    pub fn from_parts_unchecked(
        input_names: Vec<String>,
        output_names: Vec<String>,
        context: Vec<CategoricalCoding>,
        farms: Vec<Farm>,
    ) -> Self {
        Dataset {
            farms,
            input_names,
            output_names,
            context,
        }
    }

    /// Dataset without contextual variables, with generated names.
    pub fn from_matrices(inputs: &[Vec<f64>], outputs: &[Vec<f64>]) -> Result<Self, DataError> {
        if inputs.len() != outputs.len() {
            return Err(DataError::Invalid(format!(
                "{} input rows but {} output rows",
                inputs.len(),
                outputs.len()
            )));
        }
        let n = inputs.first().map_or(0, Vec::len);
        let m = outputs.first().map_or(0, Vec::len);
        let farms = inputs
            .iter()
            .zip(outputs)
            .enumerate()
            .map(|(k, (x, y))| Farm {
                id: format!("DMU{}", k + 1),
                governorate: None,
                inputs: x.clone(),
                outputs: y.clone(),
                context: Vec::new(),
            })
            .collect();
        Dataset::new(
            (1..=n).map(|i| format!("x{i}")).collect(),
            (1..=m).map(|j| format!("y{j}")).collect(),
            Vec::new(),
            farms,
        )
    }

    pub fn farms(&self) -> &[Farm] {
        &self.farms
    }

    pub fn farm(&self, k: usize) -> &Farm {
        &self.farms[k]
    }

    pub fn len(&self) -> usize {
        self.farms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.farms.is_empty()
    }

    pub fn num_inputs(&self) -> usize {
        self.input_names.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.output_names.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn codings(&self) -> &[CategoricalCoding] {
        &self.context
    }

    pub fn context_names(&self) -> Vec<&str> {
        self.context.iter().map(|c| c.variable.as_str()).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.farms.iter().position(|f| f.id == id)
    }

    pub(crate) fn duplicate_ids(&self) -> Vec<(usize, &str)> {
        let mut seen = HashSet::new();
        self.farms
            .iter()
            .enumerate()
            .filter(|(_, f)| !seen.insert(f.id.as_str()))
            .map(|(k, f)| (k, f.id.as_str()))
            .collect()
    }

    /// Copy with input column `i` multiplied by `factor`.
    pub fn with_scaled_input(&self, i: usize, factor: f64) -> Dataset {
        let mut d = self.clone();
        for f in &mut d.farms {
            f.inputs[i] *= factor;
        }
        d
    }

    pub fn with_scaled_output(&self, j: usize, factor: f64) -> Dataset {
        let mut d = self.clone();
        for f in &mut d.farms {
            f.outputs[j] *= factor;
        }
        d
    }

    /// Copy with `farm` appended at the end.
    pub fn with_farm(&self, farm: Farm) -> Result<Dataset, DataError> {
        let mut farms = self.farms.clone();
        farms.push(farm);
        Dataset::new(
            self.input_names.clone(),
            self.output_names.clone(),
            self.context.clone(),
            farms,
        )
    }
}
