use serde::{Deserialize, Serialize};

use super::problem::{LinearProgram, LpError, Sense};

/// Solver tolerances. Values are applied to the equilibrated problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub feasibility: f64,
    pub optimality: f64,
    /// Consecutive non-improving pivots before switching to Bland's rule.
    pub stall_pivots: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feasibility: 1e-9,
            optimality: 1e-9,
            stall_pivots: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value in original units. Only meaningful when optimal.
    pub objective: f64,
    /// Primal values in original units.
    pub values: Vec<f64>,
    /// Row multipliers `y` such that `c - Aᵀy` are the reduced costs.
    pub duals: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    fn terminal(status: LpStatus, n: usize, m: usize, iterations: usize) -> Self {
        LpSolution {
            status,
            objective: f64::NAN,
            values: vec![0.0; n],
            duals: vec![0.0; m],
            iterations,
        }
    }
}

const PIVOT_TOL: f64 = 1e-10;

/// Solves `lp` with the two-phase primal simplex method.
///
/// Only malformed programs produce `Err`; infeasibility, unboundedness and the
/// iteration limit are reported through [`LpSolution::status`].
pub fn solve_lp(lp: &LinearProgram, tol: &Tolerances) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let scaling = Scaling::equilibrate(lp);
    let mut tableau = Tableau::build(lp, &scaling);
    let limit = 50 * (lp.num_rows() + lp.num_vars());

    // phase 1
    if tableau.has_artificials() {
        tableau.set_phase_one_costs();
        match tableau.run(tol, limit) {
            RunOutcome::Optimal => {}
            RunOutcome::IterationLimit => {
                return Ok(LpSolution::terminal(
                    LpStatus::IterationLimit,
                    lp.num_vars(),
                    lp.num_rows(),
                    tableau.iterations,
                ))
            }
            // phase 1 is bounded below by zero
            RunOutcome::Unbounded => unreachable!("phase 1 objective is bounded"),
        }
        let infeasibility = tableau.objective_value();
        if infeasibility > tol.feasibility * (1.0 + tableau.rhs_scale) {
            return Ok(LpSolution::terminal(
                LpStatus::Infeasible,
                lp.num_vars(),
                lp.num_rows(),
                tableau.iterations,
            ));
        }
        tableau.expel_artificials();
    }

    // phase 2
    tableau.set_phase_two_costs(lp, &scaling);
    let status = match tableau.run(tol, limit) {
        RunOutcome::Optimal => LpStatus::Optimal,
        RunOutcome::Unbounded => LpStatus::Unbounded,
        RunOutcome::IterationLimit => LpStatus::IterationLimit,
    };
    if status != LpStatus::Optimal {
        return Ok(LpSolution::terminal(
            status,
            lp.num_vars(),
            lp.num_rows(),
            tableau.iterations,
        ));
    }

    let values: Vec<f64> = tableau
        .primal()
        .into_iter()
        .zip(&scaling.cols)
        .map(|(x, s)| (x * s).max(0.0))
        .collect();
    let duals = tableau
        .scaled_duals()
        .into_iter()
        .zip(&scaling.rows)
        .map(|(y, r)| y * r)
        .collect();
    Ok(LpSolution {
        status,
        objective: lp.evaluate(&values),
        values,
        duals,
        iterations: tableau.iterations,
    })
}

/// Power-of-two row and column factors, so scaling introduces no rounding.
struct Scaling {
    rows: Vec<f64>,
    cols: Vec<f64>,
}

impl Scaling {
    fn equilibrate(lp: &LinearProgram) -> Self {
        let m = lp.num_rows();
        let n = lp.num_vars();
        let mut rows = vec![1.0; m];
        let mut cols = vec![1.0; n];
        let a = lp.rows();
        for _ in 0..4 {
            for i in 0..m {
                if let Some(f) = geometric_factor((0..n).map(|j| a[i][j] * rows[i] * cols[j])) {
                    rows[i] *= f;
                }
            }
            for j in 0..n {
                if let Some(f) = geometric_factor((0..m).map(|i| a[i][j] * rows[i] * cols[j])) {
                    cols[j] *= f;
                }
            }
        }
        Scaling { rows, cols }
    }
}

fn geometric_factor(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (lo, hi) = values
        .map(f64::abs)
        .filter(|v| *v > 0.0)
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi == 0.0 {
        return None;
    }
    let target = 1.0 / (lo * hi).sqrt();
    Some(2.0_f64.powi(target.log2().round() as i32))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

enum RunOutcome {
    Optimal,
    Unbounded,
    IterationLimit,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<f64>>,
    /// Reduced costs; the last entry holds minus the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// For each original row, the column of its slack or artificial and the
    /// sign that maps the tableau dual back to the original row.
    row_markers: Vec<(usize, f64)>,
    /// Original row index of each live tableau row.
    live_rows: Vec<usize>,
    num_structural: usize,
    iterations: usize,
    rhs_scale: f64,
}

impl Tableau {
    fn build(lp: &LinearProgram, scaling: &Scaling) -> Self {
        let m = lp.num_rows();
        let n = lp.num_vars();
        let num_slack = lp.senses().iter().filter(|s| **s != Sense::Eq).count();

        // flip rows with negative rhs so the initial basis is feasible
        let mut senses = Vec::with_capacity(m);
        let mut flips = Vec::with_capacity(m);
        for (&sense, &b) in lp.senses().iter().zip(lp.rhs()) {
            if b < 0.0 {
                flips.push(-1.0);
                senses.push(match sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                });
            } else {
                flips.push(1.0);
                senses.push(sense);
            }
        }
        let num_art = senses.iter().filter(|s| **s != Sense::Le).count();
        let width = n + num_slack + num_art;

        let mut kinds = vec![ColumnKind::Structural; n];
        kinds.extend(std::iter::repeat_n(ColumnKind::Slack, num_slack));
        kinds.extend(std::iter::repeat_n(ColumnKind::Artificial, num_art));

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut row_markers = Vec::with_capacity(m);
        let mut next_slack = n;
        let mut next_art = n + num_slack;
        let mut rhs_scale = 0.0_f64;
        for i in 0..m {
            let r = scaling.rows[i] * flips[i];
            let mut row = vec![0.0; width + 1];
            for j in 0..n {
                row[j] = lp.rows()[i][j] * r * scaling.cols[j];
            }
            row[width] = lp.rhs()[i] * r;
            rhs_scale = rhs_scale.max(row[width].abs());
            match senses[i] {
                Sense::Le => {
                    row[next_slack] = 1.0;
                    basis.push(next_slack);
                    // d_slack = -y  =>  y = -d
                    row_markers.push((next_slack, -flips[i]));
                    next_slack += 1;
                }
                Sense::Ge => {
                    row[next_slack] = -1.0;
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    // d_surplus = y
                    row_markers.push((next_slack, flips[i]));
                    next_slack += 1;
                    next_art += 1;
                }
                Sense::Eq => {
                    row[next_art] = 1.0;
                    basis.push(next_art);
                    row_markers.push((next_art, -flips[i]));
                    next_art += 1;
                }
            }
            rows.push(row);
        }

        Tableau {
            rows,
            cost: vec![0.0; width + 1],
            basis,
            kinds,
            row_markers,
            live_rows: (0..m).collect(),
            num_structural: n,
            iterations: 0,
            rhs_scale,
        }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn has_artificials(&self) -> bool {
        self.kinds.contains(&ColumnKind::Artificial)
    }

    fn objective_value(&self) -> f64 {
        -self.cost[self.width()]
    }

    fn set_phase_one_costs(&mut self) {
        let w = self.width();
        let costs: Vec<f64> = self
            .kinds
            .iter()
            .map(|k| if *k == ColumnKind::Artificial { 1.0 } else { 0.0 })
            .collect();
        self.price(&costs, w);
    }

    fn set_phase_two_costs(&mut self, lp: &LinearProgram, scaling: &Scaling) {
        let w = self.width();
        let mut costs = vec![0.0; w];
        for j in 0..self.num_structural {
            costs[j] = lp.objective()[j] * scaling.cols[j];
        }
        self.price(&costs, w);
    }

    /// Sets the cost row to the reduced costs of `costs` under the current basis.
    fn price(&mut self, costs: &[f64], w: usize) {
        let mut cost = costs.to_vec();
        cost.push(0.0);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = costs[b];
            if cb != 0.0 {
                for j in 0..=w {
                    cost[j] -= cb * row[j];
                }
            }
        }
        self.cost = cost;
    }

    fn can_enter(&self, j: usize) -> bool {
        self.kinds[j] != ColumnKind::Artificial
    }

    fn run(&mut self, tol: &Tolerances, limit: usize) -> RunOutcome {
        let w = self.width();
        let mut bland = false;
        let mut stalled = 0usize;
        loop {
            let entering = if bland {
                (0..w).find(|&j| self.can_enter(j) && self.cost[j] < -tol.optimality)
            } else {
                (0..w)
                    .filter(|&j| self.can_enter(j) && self.cost[j] < -tol.optimality)
                    .min_by(|&a, &b| self.cost[a].total_cmp(&self.cost[b]))
            };
            let Some(q) = entering else {
                return RunOutcome::Optimal;
            };
            let Some(r) = self.ratio_test(q, bland) else {
                return RunOutcome::Unbounded;
            };
            if self.iterations >= limit {
                return RunOutcome::IterationLimit;
            }
            let before = self.objective_value();
            self.pivot(r, q);
            let after = self.objective_value();
            if before - after <= 1e-12 * (1.0 + before.abs()) {
                stalled += 1;
                if stalled >= tol.stall_pivots {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
        }
    }

    fn ratio_test(&self, q: usize, bland: bool) -> Option<usize> {
        let w = self.width();
        let mut best: Option<(usize, f64)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = row[q];
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = row[w].max(0.0) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                    let better = if tie {
                        if bland {
                            self.basis[i] < self.basis[bi]
                        } else {
                            a > self.rows[bi][q]
                        }
                    } else {
                        ratio < br
                    };
                    if better {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, q: usize) {
        self.iterations += 1;
        let w = self.width();
        let p = self.rows[r][q];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rows[r][q] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q];
            if f != 0.0 {
                for j in 0..=w {
                    row[j] -= f * pivot_row[j];
                }
                row[q] = 0.0;
            }
        }
        let f = self.cost[q];
        if f != 0.0 {
            for j in 0..=w {
                self.cost[j] -= f * pivot_row[j];
            }
            self.cost[q] = 0.0;
        }
        self.basis[r] = q;
    }

    /// Pivots zero-valued artificials out of the basis, dropping rows that
    /// turn out to be redundant.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.kinds[self.basis[i]] != ColumnKind::Artificial {
                i += 1;
                continue;
            }
            let candidate = (0..self.width())
                .filter(|&j| self.can_enter(j))
                .filter(|&j| self.rows[i][j].abs() > 1e-9)
                .max_by(|&a, &b| self.rows[i][a].abs().total_cmp(&self.rows[i][b].abs()));
            match candidate {
                Some(q) => {
                    self.pivot(i, q);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                    self.live_rows.remove(i);
                }
            }
        }
    }

    fn primal(&self) -> Vec<f64> {
        let w = self.width();
        let mut x = vec![0.0; self.num_structural];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_structural {
                x[b] = row[w];
            }
        }
        x
    }

    fn scaled_duals(&self) -> Vec<f64> {
        let mut y: Vec<f64> = self
            .row_markers
            .iter()
            .map(|&(col, sign)| sign * self.cost[col])
            .collect();
        for (i, yi) in y.iter_mut().enumerate() {
            if !self.live_rows.contains(&i) {
                *yi = 0.0;
            }
        }
        y
    }
}
