use serde::Serialize;

use super::RegressionError;
use crate::stats::{f_survival, student_t_two_sided};

/// A column whose remaining norm after orthogonalising against the earlier
/// columns falls below this fraction of its own norm is treated as dependent.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitKind {
    Ols,
    LogLinear,
    Integrated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub kind: FitKind,
    pub names: Vec<String>,
    pub estimates: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub f_statistic: f64,
    pub overall_f_pvalue: f64,
    pub residuals: Vec<f64>,
    pub n: usize,
    pub p: usize,
    /// Number of log-input coefficients following the intercept (integrated
    /// model only).
    pub log_inputs: usize,
}

impl RegressionFit {
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|i| self.estimates[i])
    }

    pub fn fitted(&self, y: &[f64]) -> Vec<f64> {
        y.iter().zip(&self.residuals).map(|(y, r)| y - r).collect()
    }
}

/// Householder QR of a column-major `n × p` matrix, applied to `y` as well.
struct Qr {
    /// Upper triangle holds R.
    a: Vec<Vec<f64>>,
    qty: Vec<f64>,
}

fn householder(names: &[String], cols: &[Vec<f64>], y: &[f64]) -> Result<Qr, RegressionError> {
    let n = y.len();
    let p = cols.len();
    let mut a = cols.to_vec();
    let mut qty = y.to_vec();
    for j in 0..p {
        let original: f64 = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        let norm: f64 = a[j][j..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if original == 0.0 || norm <= RANK_TOL * original {
            return Err(collinear(names, &a, j));
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        let reflect = |col: &mut [f64]| {
            let dot: f64 = v.iter().zip(&col[j..]).map(|(a, b)| a * b).sum();
            let f = 2.0 * dot / vnorm2;
            for (c, vi) in col[j..].iter_mut().zip(&v) {
                *c -= f * vi;
            }
        };
        for col in a.iter_mut().skip(j + 1) {
            reflect(col);
        }
        reflect(&mut qty);
        a[j][j] = alpha;
        for c in &mut a[j][j + 1..n] {
            *c = 0.0;
        }
    }
    Ok(Qr { a, qty })
}

/// Names the earlier columns that column `j` depends on, using the already
/// triangularised block.
fn collinear(names: &[String], a: &[Vec<f64>], j: usize) -> RegressionError {
    let r = |i: usize, k: usize| a[k][i];
    let mut c = vec![0.0; j];
    for i in (0..j).rev() {
        let mut s = a[j][i];
        for k in i + 1..j {
            s -= r(i, k) * c[k];
        }
        c[i] = s / r(i, i);
    }
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let depends_on = (0..j)
        .filter(|&i| c[i].abs() > 1e-8 * scale.max(f64::MIN_POSITIVE))
        .map(|i| names[i].clone())
        .collect::<Vec<_>>();
    RegressionError::Collinear {
        column: names[j].clone(),
        depends_on: if depends_on.is_empty() {
            vec!["nothing (all zero)".into()]
        } else {
            depends_on
        },
    }
}

fn upper_inverse(a: &[Vec<f64>], p: usize) -> Vec<Vec<f64>> {
    // inv[i][k] for k >= i, R stored column-major in `a`
    let mut inv = vec![vec![0.0; p]; p];
    for k in 0..p {
        inv[k][k] = 1.0 / a[k][k];
        for i in (0..k).rev() {
            let s: f64 = (i + 1..=k).map(|m| a[m][i] * inv[m][k]).sum();
            inv[i][k] = -s / a[i][i];
        }
    }
    inv
}

/// Least squares with an intercept, which must be the first column of `x`
/// (rows are observations).
pub fn fit_ols(names: &[String], x: &[Vec<f64>], y: &[f64]) -> Result<RegressionFit, RegressionError> {
    let n = y.len();
    let p = names.len();
    if x.len() != n || x.iter().any(|r| r.len() != p) {
        return Err(RegressionError::Usage(format!(
            "design matrix must be {n} x {p} to match the response and names"
        )));
    }
    if p == 0 || x.iter().any(|r| r[0] != 1.0) {
        return Err(RegressionError::Usage("first design column must be the intercept".into()));
    }
    if n <= p {
        return Err(RegressionError::SampleSize { n, p });
    }
    if x.iter().flatten().chain(y).any(|v| !v.is_finite()) {
        return Err(RegressionError::Domain("non-finite value in regression data".into()));
    }
    let cols: Vec<Vec<f64>> = (0..p).map(|j| x.iter().map(|r| r[j]).collect()).collect();
    let qr = householder(names, &cols, y)?;
    let df = (n - p) as f64;

    if y.iter().all(|v| *v == y[0]) {
        // constant response: slopes are zero, nothing is explained
        let mut estimates = vec![0.0; p];
        estimates[0] = y[0];
        return Ok(RegressionFit {
            kind: FitKind::Ols,
            names: names.to_vec(),
            estimates,
            std_errors: vec![0.0; p],
            t_values: vec![0.0; p],
            p_values: vec![1.0; p],
            r_squared: 0.0,
            adj_r_squared: 1.0 - (n as f64 - 1.0) / df,
            f_statistic: 0.0,
            overall_f_pvalue: 1.0,
            residuals: vec![0.0; n],
            n,
            p,
            log_inputs: 0,
        });
    }

    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = (i + 1..p).map(|k| qr.a[k][i] * beta[k]).sum();
        beta[i] = (qr.qty[i] - s) / qr.a[i][i];
    }
    let residuals: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(row, yi)| yi - row.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    let sse: f64 = residuals.iter().map(|r| r * r).sum();
    let mean = y.iter().sum::<f64>() / n as f64;
    let sst: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let r_squared = (1.0 - sse / sst).clamp(0.0, 1.0);
    let sigma2 = sse / df;

    let inv = upper_inverse(&qr.a, p);
    let std_errors: Vec<f64> = (0..p)
        .map(|j| (sigma2 * inv[j].iter().map(|v| v * v).sum::<f64>()).sqrt())
        .collect();
    let t_values: Vec<f64> = beta
        .iter()
        .zip(&std_errors)
        .map(|(b, se)| if *se == 0.0 && *b == 0.0 { 0.0 } else { b / se })
        .collect();
    let p_values = t_values.iter().map(|t| student_t_two_sided(*t, df)).collect();

    let (f_statistic, overall_f_pvalue) = if p > 1 {
        let d1 = (p - 1) as f64;
        let f = ((sst - sse).max(0.0) / d1) / sigma2;
        (f, f_survival(f, d1, df))
    } else {
        (f64::NAN, f64::NAN)
    };

    Ok(RegressionFit {
        kind: FitKind::Ols,
        names: names.to_vec(),
        estimates: beta,
        std_errors,
        t_values,
        p_values,
        r_squared,
        adj_r_squared: 1.0 - (1.0 - r_squared) * (n as f64 - 1.0) / df,
        f_statistic,
        overall_f_pvalue,
        residuals,
        n,
        p,
        log_inputs: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn names(p: usize) -> Vec<String> {
        std::iter::once("intercept".to_string())
            .chain((1..p).map(|i| format!("x{i}")))
            .collect()
    }

    fn simple(xs: &[f64]) -> Vec<Vec<f64>> {
        xs.iter().map(|x| vec![1.0, *x]).collect()
    }

    #[test]
    fn three_points() {
        let fit = fit_ols(&names(2), &simple(&[0.0, 1.0, 2.0]), &[0.0, 1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(fit.estimates[0], 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.estimates[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 0.75, epsilon = 1e-12);
        // σ² = SSE/(n-p) = (1/6)/1, var(b) = σ²/Sxx = 1/12
        assert_abs_diff_eq!(fit.std_errors[1], (1.0f64 / 12.0).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(fit.adj_r_squared, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn exact_line() {
        let xs = [0.0, 1.0, 2.5, 4.0, 7.0];
        let y: Vec<f64> = xs.iter().map(|x| 2.0 + 3.0 * x).collect();
        let fit = fit_ols(&names(2), &simple(&xs), &y).unwrap();
        assert_abs_diff_eq!(fit.estimates[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.estimates[1], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn duplicated_column_is_collinear() {
        let x: Vec<Vec<f64>> = [1.0, 2.0, 3.0, 5.0].iter().map(|v| vec![1.0, *v, *v]).collect();
        let err = fit_ols(&names(3), &x, &[1.0, 3.0, 2.0, 4.0]).unwrap_err();
        assert_eq!(
            err,
            RegressionError::Collinear {
                column: "x2".into(),
                depends_on: vec!["x1".into()]
            }
        );
    }

    #[test]
    fn constant_column_names_the_intercept() {
        let x: Vec<Vec<f64>> = [1.0, 2.0, 3.0, 5.0].iter().map(|v| vec![1.0, *v, 3.0]).collect();
        let err = fit_ols(&names(3), &x, &[1.0, 3.0, 2.0, 4.0]).unwrap_err();
        assert_eq!(
            err,
            RegressionError::Collinear {
                column: "x2".into(),
                depends_on: vec!["intercept".into()]
            }
        );
        assert!(err.to_string().contains("x2"));
    }

    #[test]
    fn too_few_observations() {
        assert_eq!(
            fit_ols(&names(2), &simple(&[1.0, 2.0]), &[1.0, 2.0]).unwrap_err(),
            RegressionError::SampleSize { n: 2, p: 2 }
        );
    }

    #[test]
    fn constant_response() {
        let fit = fit_ols(&names(2), &simple(&[1.0, 2.0, 4.0]), &[0.0; 3]).unwrap();
        assert_eq!(fit.estimates, [0.0, 0.0]);
        assert_eq!(fit.r_squared, 0.0);
        assert_eq!(fit.p_values, [1.0, 1.0]);
    }

    #[test]
    fn intercept_required() {
        let x = vec![vec![2.0, 1.0]; 4];
        assert!(matches!(
            fit_ols(&names(2), &x, &[1.0, 2.0, 3.0, 4.0]),
            Err(RegressionError::Usage(_))
        ));
    }
}
