//! Dense linear programming.
//!
//! Problems are stated as `min c·v` subject to rows `a·v {<=, =, >=} b` and
//! `v >= 0`, and solved by [`solve_lp`], a two-phase primal simplex on a dense
//! tableau with power-of-two equilibration and a Bland fallback once pivoting
//! stalls.

mod problem;
mod simplex;

pub use problem::{LinearProgram, LpError, Sense};
pub use simplex::{solve_lp, LpSolution, LpStatus, Tolerances};
