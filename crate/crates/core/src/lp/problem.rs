use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Direction of a constraint row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LpError {
    #[error("row {row} has {found} coefficients, expected {expected}")]
    RowLength {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("non-finite coefficient in {0}")]
    NonFinite(String),
    #[error("linear program has no variables")]
    Empty,
}

/// A minimisation problem over non-negative variables with dense rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    senses: Vec<Sense>,
    rhs: Vec<f64>,
}

impl LinearProgram {
    /// Starts a program minimising `objective · v`.
    pub fn minimize(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Appends the row `coeffs · v <sense> rhs`.
    pub fn constraint(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> &mut Self {
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
        self
    }

    pub fn with_constraint(mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> Self {
        self.constraint(coeffs, sense, rhs);
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    /// Checks dimensions and finiteness.
    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if n == 0 {
            return Err(LpError::Empty);
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite("objective".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return Err(LpError::RowLength {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
            if row.iter().any(|a| !a.is_finite()) || !self.rhs[i].is_finite() {
                return Err(LpError::NonFinite(format!("row {i}")));
            }
        }
        Ok(())
    }

    /// Largest violation of any row or sign constraint at `v`.
    pub fn max_violation(&self, v: &[f64]) -> f64 {
        let mut worst = v.iter().fold(0.0_f64, |w, &x| w.max(-x));
        for ((row, sense), &b) in self.rows.iter().zip(&self.senses).zip(&self.rhs) {
            let lhs: f64 = row.iter().zip(v).map(|(a, x)| a * x).sum();
            let viol = match sense {
                Sense::Le => lhs - b,
                Sense::Ge => b - lhs,
                Sense::Eq => (lhs - b).abs(),
            };
            worst = worst.max(viol);
        }
        worst
    }

    pub fn evaluate(&self, v: &[f64]) -> f64 {
        self.objective.iter().zip(v).map(|(c, x)| c * x).sum()
    }
}

/// Fixed plain-text dump used for debugging:
///
/// ```text
/// LP rows=<m> cols=<n>
/// MIN <c_1> ... <c_n>
/// R<i> <a_i1> ... <a_in> <sense> <b_i>
/// END
/// ```
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LP rows={} cols={}", self.num_rows(), self.num_vars())?;
        write!(f, "MIN")?;
        for c in &self.objective {
            write!(f, " {c:.17e}")?;
        }
        writeln!(f)?;
        for (i, ((row, sense), b)) in self.rows.iter().zip(&self.senses).zip(&self.rhs).enumerate() {
            write!(f, "R{}", i + 1)?;
            for a in row {
                write!(f, " {a:.17e}")?;
            }
            writeln!(f, " {} {b:.17e}", sense.symbol())?;
        }
        writeln!(f, "END")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_rows() {
        let lp = LinearProgram::minimize(vec![1.0, 1.0]).with_constraint(vec![1.0], Sense::Le, 1.0);
        assert_eq!(
            lp.validate(),
            Err(LpError::RowLength {
                row: 0,
                found: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn rejects_nan() {
        let lp = LinearProgram::minimize(vec![f64::NAN]);
        assert!(matches!(lp.validate(), Err(LpError::NonFinite(_))));
    }

    #[test]
    fn text_dump_is_fixed_format() {
        let lp = LinearProgram::minimize(vec![-1.0]).with_constraint(vec![1.0], Sense::Le, 3.0);
        let text = lp.to_string();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "LP rows=1 cols=1");
        assert!(lines[1].starts_with("MIN -1.00000000000000000e0"));
        assert!(lines[2].ends_with("<= 3.00000000000000000e0"));
        assert_eq!(lines[3], "END");
    }
}
