use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::coding::{coding_by_name, CategoricalCoding};
use super::farm::{DataError, Dataset, Farm};

/// Maps a dataset variable to a CSV column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMap {
    pub name: String,
    pub column: String,
}

/// Maps a categorical variable (by coding name, e.g. `water_salinity`) to a
/// CSV column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextColumn {
    pub variable: String,
    pub column: String,
}

/// Explicit column mapping for CSV ingestion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Schema {
    pub id: String,
    pub governorate: Option<String>,
    pub inputs: Vec<ColumnMap>,
    pub outputs: Vec<ColumnMap>,
    pub context: Vec<ContextColumn>,
}

fn same(name: &str) -> ColumnMap {
    ColumnMap {
        name: name.into(),
        column: name.into(),
    }
}

impl Default for Schema {
    /// Revenue output, three aggregated inputs and the five farm-specific
    /// factors.
    fn default() -> Self {
        let ctx = |variable: &str, column: &str| ContextColumn {
            variable: variable.into(),
            column: column.into(),
        };
        Schema {
            id: "id".into(),
            governorate: Some("governorate".into()),
            inputs: vec![same("cropped_area"), same("labour"), same("electricity")],
            outputs: vec![same("revenue")],
            context: vec![
                ctx("farm_size", "size"),
                ctx("water_salinity", "salinity"),
                ctx("irrigation_technology", "irrigation"),
                ctx("education_level", "education"),
                ctx("farmer_age", "age"),
            ],
        }
    }
}

impl Schema {
    /// The schema [`write_dataset`] produces for `d`.
    pub fn for_dataset(d: &Dataset) -> Schema {
        Schema {
            id: "id".into(),
            governorate: has_governorate(d).then(|| "governorate".into()),
            inputs: d.input_names().iter().map(|n| same(n)).collect(),
            outputs: d.output_names().iter().map(|n| same(n)).collect(),
            context: d
                .codings()
                .iter()
                .map(|c| ContextColumn {
                    variable: c.variable.clone(),
                    column: default_context_column(&c.variable),
                })
                .collect(),
        }
    }

    fn codings(&self) -> Result<Vec<CategoricalCoding>, DataError> {
        self.context
            .iter()
            .map(|c| coding_by_name(&c.variable).ok_or_else(|| DataError::UnknownCoding(c.variable.clone())))
            .collect()
    }
}

/// Column name the default schema uses for a contextual variable, or the
/// variable name itself when the default schema does not know it.
fn default_context_column(variable: &str) -> String {
    Schema::default()
        .context
        .into_iter()
        .find(|c| c.variable == variable)
        .map_or_else(|| variable.to_string(), |c| c.column)
}

fn has_governorate(d: &Dataset) -> bool {
    d.farms().iter().any(|f| f.governorate.is_some())
}

/// A row left out by [`load_dataset_lenient`] because a mapped field was empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardedRow {
    pub row: usize,
    pub id: String,
    pub column: String,
}

/// Loads a dataset, failing on the first invalid row.
pub fn load_dataset(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset, DataError> {
    let file = std::fs::File::open(path)?;
    read_dataset(file, schema, false).map(|(d, _)| d)
}

/// Loads a dataset, discarding rows with missing mapped fields and reporting
/// them. Malformed or out-of-range values are still errors.
pub fn load_dataset_lenient(
    path: impl AsRef<Path>,
    schema: &Schema,
) -> Result<(Dataset, Vec<DiscardedRow>), DataError> {
    let file = std::fs::File::open(path)?;
    read_dataset(file, schema, true)
}

struct Columns {
    id: usize,
    governorate: Option<usize>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    context: Vec<usize>,
}

impl Columns {
    fn resolve(header: &csv::StringRecord, schema: &Schema) -> Result<Self, DataError> {
        let index: HashMap<&str, usize> = header.iter().enumerate().map(|(i, h)| (h.trim(), i)).collect();
        let find = |col: &str| index.get(col).copied().ok_or_else(|| DataError::MissingColumn(col.to_string()));
        Ok(Columns {
            id: find(&schema.id)?,
            governorate: schema.governorate.as_deref().map(find).transpose()?,
            inputs: schema.inputs.iter().map(|c| find(&c.column)).collect::<Result<_, _>>()?,
            outputs: schema.outputs.iter().map(|c| find(&c.column)).collect::<Result<_, _>>()?,
            context: schema.context.iter().map(|c| find(&c.column)).collect::<Result<_, _>>()?,
        })
    }
}

pub(crate) fn read_dataset<R: Read>(
    reader: R,
    schema: &Schema,
    discard_incomplete: bool,
) -> Result<(Dataset, Vec<DiscardedRow>), DataError> {
    let codings = schema.codings()?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let cols = Columns::resolve(rdr.headers()?, schema)?;

    let mut farms = Vec::new();
    let mut discarded = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        let row = idx + 1;
        let cell = |i: usize| record.get(i).unwrap_or("").trim();

        let mut mapped: Vec<(usize, &str)> = vec![(cols.id, schema.id.as_str())];
        mapped.extend(cols.inputs.iter().copied().zip(schema.inputs.iter().map(|c| c.column.as_str())));
        mapped.extend(cols.outputs.iter().copied().zip(schema.outputs.iter().map(|c| c.column.as_str())));
        mapped.extend(cols.context.iter().copied().zip(schema.context.iter().map(|c| c.column.as_str())));
        if let Some(&(_, column)) = mapped.iter().find(|(i, _)| cell(*i).is_empty()) {
            if discard_incomplete {
                discarded.push(DiscardedRow {
                    row,
                    id: cell(cols.id).to_string(),
                    column: column.to_string(),
                });
                continue;
            }
            return Err(DataError::MissingValue {
                row,
                column: column.to_string(),
            });
        }

        let positive = |i: usize, column: &str| -> Result<f64, DataError> {
            let raw = cell(i);
            let v: f64 = raw.parse().map_err(|_| DataError::Parse {
                row,
                column: column.to_string(),
                value: raw.to_string(),
            })?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(DataError::NonPositive {
                    row,
                    column: column.to_string(),
                    value: v,
                })
            }
        };
        let inputs = cols
            .inputs
            .iter()
            .zip(&schema.inputs)
            .map(|(&i, c)| positive(i, &c.column))
            .collect::<Result<Vec<_>, _>>()?;
        let outputs = cols
            .outputs
            .iter()
            .zip(&schema.outputs)
            .map(|(&i, c)| positive(i, &c.column))
            .collect::<Result<Vec<_>, _>>()?;
        let mut context = Vec::with_capacity(codings.len());
        for ((&i, c), coding) in cols.context.iter().zip(&schema.context).zip(&codings) {
            let raw = cell(i);
            let code: i64 = raw.parse().map_err(|_| DataError::Parse {
                row,
                column: c.column.clone(),
                value: raw.to_string(),
            })?;
            if !coding.contains(code) {
                return Err(DataError::CodeOutOfRange {
                    row,
                    column: c.column.clone(),
                    code,
                    max: coding.max_code(),
                });
            }
            context.push(code as u8);
        }
        let id = cell(cols.id).to_string();
        if farms.iter().any(|f: &Farm| f.id == id) {
            return Err(DataError::DuplicateId { row, id });
        }
        let governorate = cols
            .governorate
            .map(|i| cell(i).to_string())
            .filter(|g| !g.is_empty());
        farms.push(Farm {
            id,
            governorate,
            inputs,
            outputs,
            context,
        });
    }

    let dataset = Dataset::new(
        schema.inputs.iter().map(|c| c.name.clone()).collect(),
        schema.outputs.iter().map(|c| c.name.clone()).collect(),
        codings,
        farms,
    )?;
    Ok((dataset, discarded))
}

/// Writes `d` as CSV in the layout described by [`Schema::for_dataset`]:
/// id, governorate (if any farm has one), outputs, inputs, context codes.
pub fn write_dataset<W: Write>(d: &Dataset, writer: W) -> Result<(), DataError> {
    let with_gov = has_governorate(d);
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id".to_string()];
    if with_gov {
        header.push("governorate".into());
    }
    header.extend(d.output_names().iter().cloned());
    header.extend(d.input_names().iter().cloned());
    header.extend(d.codings().iter().map(|c| default_context_column(&c.variable)));
    w.write_record(&header)?;
    for f in d.farms() {
        let mut rec = vec![f.id.clone()];
        if with_gov {
            rec.push(f.governorate.clone().unwrap_or_default());
        }
        rec.extend(f.outputs.iter().map(|v| v.to_string()));
        rec.extend(f.inputs.iter().map(|v| v.to_string()));
        rec.extend(f.context.iter().map(|c| c.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
