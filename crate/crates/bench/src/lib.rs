//! Shared fixtures for the benchmarks.

use farmeff_core::data::{generate_synthetic, Dataset, SyntheticTargets};

/// Synthetic farms with the default schema.
pub fn farms(k: usize) -> Dataset {
    generate_synthetic(k, 7, &SyntheticTargets::default()).expect("synthetic data")
}

/// Scores in `(0.2, 1]` spread deterministically over the farms.
pub fn scores(k: usize) -> Vec<f64> {
    (0..k).map(|i| 0.2 + 0.8 * ((i * 37 % k) as f64 + 1.0) / k as f64).collect()
}
