//! Farm observations, CSV ingestion, validation, summaries and synthetic
//! populations.

mod coding;
mod csv_io;
mod farm;
mod summary;
mod synth;
mod validate;

pub use coding::{coding_by_name, farm_specific_codings, CategoricalCoding, Level};
pub use csv_io::{
    load_dataset, load_dataset_lenient, write_dataset, ColumnMap, ContextColumn, DiscardedRow,
    Schema,
};
pub use farm::{DataError, Dataset, Farm};
pub use summary::{summarize, CategoricalFrequency, SummaryStats, VariableSummary};
pub use synth::{generate_synthetic, ContextTarget, MomentTarget, SyntheticTargets};
pub use validate::{discrimination_threshold, validate_dataset, Diagnostic, Severity};
