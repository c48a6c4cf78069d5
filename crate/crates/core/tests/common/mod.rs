#![allow(dead_code)]

//! Test-only oracles. Nothing here calls into the simplex code.

use farmeff_core::lp::{LinearProgram, Sense};

/// Exhaustive basic-feasible-solution enumeration.
///
/// Every row gets its own slack column (equalities are split into a `<=` and a
/// `>=` pair), so the equality-form matrix has full row rank and every vertex
/// of the feasible region is a basic solution. Returns `None` when no basic
/// solution is feasible. The caller must supply a bounded program.
pub fn enumerate_bfs(lp: &LinearProgram) -> Option<(f64, Vec<f64>)> {
    let n = lp.num_vars();
    let mut rows: Vec<(Vec<f64>, f64, f64)> = Vec::new(); // (coeffs, slack sign, rhs)
    for ((a, s), &b) in lp.rows().iter().zip(lp.senses()).zip(lp.rhs()) {
        match s {
            Sense::Le => rows.push((a.clone(), 1.0, b)),
            Sense::Ge => rows.push((a.clone(), -1.0, b)),
            Sense::Eq => {
                rows.push((a.clone(), 1.0, b));
                rows.push((a.clone(), -1.0, b));
            }
        }
    }
    let m = rows.len();
    let width = n + m;
    let column = |j: usize| -> Vec<f64> {
        rows.iter()
            .enumerate()
            .map(|(i, (a, sign, _))| if j < n { a[j] } else if j - n == i { *sign } else { 0.0 })
            .collect()
    };
    let b: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let cols: Vec<Vec<f64>> = (0..width).map(column).collect();

    let mut best: Option<(f64, Vec<f64>)> = None;
    for subset in combinations(width, m) {
        let mat: Vec<Vec<f64>> = (0..m).map(|i| subset.iter().map(|&j| cols[j][i]).collect()).collect();
        let Some(xb) = gauss_solve(mat, b.clone()) else { continue };
        if xb.iter().any(|&v| v < -1e-9) {
            continue;
        }
        let mut v = vec![0.0; n];
        for (&j, &x) in subset.iter().zip(&xb) {
            if j < n {
                v[j] = x.max(0.0);
            }
        }
        let obj = lp.evaluate(&v);
        if best.as_ref().is_none_or(|(o, _)| obj < *o) {
            best = Some((obj, v));
        }
    }
    best
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gaussian elimination with partial pivoting; `None` for singular systems.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-11 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Input-oriented envelopment program for farm `k`, written out directly
/// from the data: variables `[θ, λ_1..λ_K]`.
pub fn envelopment_lp(x: &[Vec<f64>], y: &[Vec<f64>], k: usize, convex: bool) -> LinearProgram {
    let farms = x.len();
    let mut obj = vec![0.0; farms + 1];
    obj[0] = 1.0;
    let mut lp = LinearProgram::minimize(obj);
    for i in 0..x[0].len() {
        let mut row = vec![-x[k][i]];
        row.extend(x.iter().map(|xf| xf[i]));
        lp.constraint(row, Sense::Le, 0.0);
    }
    for j in 0..y[0].len() {
        let mut row = vec![0.0];
        row.extend(y.iter().map(|yf| yf[j]));
        lp.constraint(row, Sense::Ge, y[k][j]);
    }
    if convex {
        let mut row = vec![0.0];
        row.extend(std::iter::repeat_n(1.0, farms));
        lp.constraint(row, Sense::Eq, 1.0);
    }
    lp
}

/// CCR score from the productivity ratio, valid for one input and one output.
pub fn single_ratio_score(x: &[f64], y: &[f64], k: usize) -> f64 {
    let best = x.iter().zip(y).map(|(a, b)| b / a).fold(0.0, f64::max);
    (y[k] / x[k]) / best
}

/// Inverse by solving against each unit vector.
pub fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cols.push(gauss_solve(a.to_vec(), e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

/// Least squares through `(XᵀX)⁻¹ Xᵀy`; returns the estimates and the
/// unscaled covariance `(XᵀX)⁻¹`.
pub fn normal_equations(x: &[Vec<f64>], y: &[f64]) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
    let p = x[0].len();
    let xtx: Vec<Vec<f64>> = (0..p)
        .map(|i| (0..p).map(|j| x.iter().map(|r| r[i] * r[j]).sum()).collect())
        .collect();
    let xty: Vec<f64> = (0..p).map(|i| x.iter().zip(y).map(|(r, v)| r[i] * v).sum()).collect();
    let inv = invert(&xtx)?;
    let beta = inv.iter().map(|row| row.iter().zip(&xty).map(|(a, b)| a * b).sum()).collect();
    Some((beta, inv))
}
