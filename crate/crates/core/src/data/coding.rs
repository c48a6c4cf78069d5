use serde::{Deserialize, Serialize};

/// One level of an ordinal farm-specific variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub code: u8,
    pub description: String,
    /// Numeric bounds the level stands for, where it has any.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

/// Integer coding of a categorical variable. Codes run `1..=levels.len()`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoricalCoding {
    pub variable: String,
    pub levels: Vec<Level>,
}

impl CategoricalCoding {
    pub fn new(variable: &str, levels: &[(&str, Option<f64>, Option<f64>)]) -> Self {
        CategoricalCoding {
            variable: variable.to_string(),
            levels: levels
                .iter()
                .enumerate()
                .map(|(i, (d, lo, hi))| Level {
                    code: (i + 1) as u8,
                    description: d.to_string(),
                    lower: *lo,
                    upper: *hi,
                })
                .collect(),
        }
    }

    pub fn max_code(&self) -> u8 {
        self.levels.len() as u8
    }

    pub fn contains(&self, code: i64) -> bool {
        code >= 1 && code <= self.max_code() as i64
    }

    /// Codes are consecutive from 1 and every description is non-empty.
    pub fn is_well_formed(&self) -> bool {
        !self.levels.is_empty()
            && self
                .levels
                .iter()
                .enumerate()
                .all(|(i, l)| l.code as usize == i + 1 && !l.description.trim().is_empty())
    }
}

/// The five contextual variables in model order: farm size, water salinity,
/// irrigation technology, education level, farmer age.
pub fn farm_specific_codings() -> Vec<CategoricalCoding> {
    vec![
        CategoricalCoding::new(
            "farm_size",
            &[
                ("Area <= 2 ha", None, Some(2.0)),
                ("2 <= Area <= 5 ha", Some(2.0), Some(5.0)),
                ("Area > 5 ha", Some(5.0), None),
            ],
        ),
        CategoricalCoding::new(
            "water_salinity",
            &[
                ("Salinity <= 3840 mg/l", None, Some(3840.0)),
                ("3840 <= Salinity <= 7040 mg/l", Some(3840.0), Some(7040.0)),
                ("Salinity > 7040 mg/l", Some(7040.0), None),
            ],
        ),
        CategoricalCoding::new(
            "irrigation_technology",
            &[
                ("only traditional irrigation system", None, None),
                ("one type of advanced technology", None, None),
                ("two types of advanced technology", None, None),
                ("three types of advanced technology", None, None),
            ],
        ),
        CategoricalCoding::new(
            "education_level",
            &[
                ("illiterate", None, None),
                ("able to write and read", None, None),
                ("completed primary school", None, None),
                ("completed secondary school", None, None),
                ("university graduate", None, None),
            ],
        ),
        CategoricalCoding::new(
            "farmer_age",
            &[
                ("Age < 35 yo", None, Some(35.0)),
                ("35 <= Age <= 60 yo", Some(35.0), Some(60.0)),
                ("Age > 60 yo", Some(60.0), None),
            ],
        ),
    ]
}

pub fn coding_by_name(variable: &str) -> Option<CategoricalCoding> {
    farm_specific_codings()
        .into_iter()
        .find(|c| c.variable == variable)
}
