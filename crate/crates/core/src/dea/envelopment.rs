use serde::{Deserialize, Serialize};

use super::config::{DeaConfig, Orientation, Technology};
use super::DeaError;
use crate::data::Dataset;
use crate::lp::{solve_lp, LinearProgram, LpSolution, LpStatus, Sense, Tolerances};

/// Input and output rows of the whole population, shared by every per-farm
/// program. `x[i][k]` is input `i` of farm `k`.
#[derive(Debug, Clone)]
pub(crate) struct Reference {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

impl Reference {
    pub fn new(d: &Dataset) -> Self {
        let x = (0..d.num_inputs())
            .map(|i| d.farms().iter().map(|f| f.inputs[i]).collect())
            .collect();
        let y = (0..d.num_outputs())
            .map(|j| d.farms().iter().map(|f| f.outputs[j]).collect())
            .collect();
        Reference { x, y }
    }

    pub fn farms(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }

    pub fn check_index(&self, k: usize) -> Result<(), DeaError> {
        if k < self.farms() {
            Ok(())
        } else {
            Err(DeaError::FarmIndex {
                index: k,
                len: self.farms(),
            })
        }
    }

    /// Radial program with variables `[score, λ_1..λ_K]`.
    pub fn radial_program(&self, k: usize, tech: Technology, orientation: Orientation) -> LinearProgram {
        let farms = self.farms();
        let mut objective = vec![0.0; farms + 1];
        // input: min θ; output: max φ
        objective[0] = match orientation {
            Orientation::Input => 1.0,
            Orientation::Output => -1.0,
        };
        let mut lp = LinearProgram::minimize(objective);
        for row in &self.x {
            let (score, rhs) = match orientation {
                Orientation::Input => (-row[k], 0.0),
                Orientation::Output => (0.0, row[k]),
            };
            lp.constraint(prepend(score, row), Sense::Le, rhs);
        }
        for row in &self.y {
            let (score, rhs) = match orientation {
                Orientation::Input => (0.0, row[k]),
                Orientation::Output => (-row[k], 0.0),
            };
            lp.constraint(prepend(score, row), Sense::Ge, rhs);
        }
        if tech == Technology::Vrs {
            lp.constraint(prepend(0.0, &vec![1.0; farms]), Sense::Eq, 1.0);
        }
        lp
    }
}

fn prepend(first: f64, rest: &[f64]) -> Vec<f64> {
    let mut v = Vec::with_capacity(rest.len() + 1);
    v.push(first);
    v.extend_from_slice(rest);
    v
}

pub(crate) fn solve_stage(lp: &LinearProgram, tol: &Tolerances, stage: &'static str) -> Result<LpSolution, DeaError> {
    let sol = solve_lp(lp, tol)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol),
        status => Err(DeaError::Solver { stage, status }),
    }
}

/// Optimal radial score and intensity vector of one envelopment program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution {
    /// θ for input orientation, the expansion factor φ for output orientation.
    pub score: f64,
    pub lambda: Vec<f64>,
}

impl RadialSolution {
    pub fn sum_lambda(&self) -> f64 {
        self.lambda.iter().sum()
    }
}

pub(crate) fn radial(
    reference: &Reference,
    k: usize,
    tech: Technology,
    orientation: Orientation,
    tol: &Tolerances,
) -> Result<RadialSolution, DeaError> {
    reference.check_index(k)?;
    let lp = reference.radial_program(k, tech, orientation);
    let stage = match tech {
        Technology::Crs => "CCR envelopment",
        Technology::Vrs => "BCC envelopment",
    };
    let sol = solve_stage(&lp, tol, stage)?;
    Ok(RadialSolution {
        score: sol.values[0],
        lambda: sol.values[1..].to_vec(),
    })
}

/// The envelopment program solved for farm `k`, e.g. for dumping.
pub fn envelopment_program(
    d: &Dataset,
    k: usize,
    tech: Technology,
    orientation: Orientation,
) -> Result<LinearProgram, DeaError> {
    let reference = Reference::new(d);
    reference.check_index(k)?;
    Ok(reference.radial_program(k, tech, orientation))
}

/// Input-oriented CCR score of farm `k`.
pub fn evaluate_ccr(d: &Dataset, k: usize, cfg: &DeaConfig) -> Result<RadialSolution, DeaError> {
    radial(&Reference::new(d), k, Technology::Crs, Orientation::Input, &cfg.lp)
}

/// Input-oriented BCC score of farm `k`.
pub fn evaluate_bcc(d: &Dataset, k: usize, cfg: &DeaConfig) -> Result<RadialSolution, DeaError> {
    radial(&Reference::new(d), k, Technology::Vrs, Orientation::Input, &cfg.lp)
}

/// Output-oriented expansion factor φ ≥ 1 of farm `k`.
pub fn evaluate_output_expansion(
    d: &Dataset,
    k: usize,
    tech: Technology,
    cfg: &DeaConfig,
) -> Result<RadialSolution, DeaError> {
    radial(&Reference::new(d), k, tech, Orientation::Output, &cfg.lp)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::data::Dataset;

    /// One input, one output: E(1,1), A(2,4), B(4,4), C(3,6), D(5,5).
    pub fn five_farms() -> Dataset {
        let x = [1.0, 2.0, 4.0, 3.0, 5.0];
        let y = [1.0, 4.0, 4.0, 6.0, 5.0];
        let names = ["E", "A", "B", "C", "D"];
        let mut d = Dataset::from_matrices(
            &x.iter().map(|v| vec![*v]).collect::<Vec<_>>(),
            &y.iter().map(|v| vec![*v]).collect::<Vec<_>>(),
        )
        .unwrap();
        let mut farms = d.farms().to_vec();
        for (f, n) in farms.iter_mut().zip(names) {
            f.id = n.to_string();
        }
        d = Dataset::new(d.input_names().to_vec(), d.output_names().to_vec(), vec![], farms).unwrap();
        d
    }

    /// Two inputs, one output: P((2,2),2), Q((4,2),2).
    pub fn two_inputs() -> Dataset {
        let mut d = Dataset::from_matrices(&[vec![2.0, 2.0], vec![4.0, 2.0]], &[vec![2.0], vec![2.0]]).unwrap();
        let mut farms = d.farms().to_vec();
        farms[0].id = "P".into();
        farms[1].id = "Q".into();
        d = Dataset::new(d.input_names().to_vec(), d.output_names().to_vec(), vec![], farms).unwrap();
        d
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use approx::assert_abs_diff_eq;

    const E: usize = 0;
    const A: usize = 1;
    const B: usize = 2;
    const C: usize = 3;
    const D: usize = 4;

    fn cfg() -> DeaConfig {
        DeaConfig::default()
    }

    #[test]
    fn ccr_scores_on_fixture() {
        let d = five_farms();
        let expected = [0.5, 1.0, 0.5, 1.0, 0.5];
        for (k, want) in expected.iter().enumerate() {
            let s = evaluate_ccr(&d, k, &cfg()).unwrap();
            assert_abs_diff_eq!(s.score, *want, epsilon = 1e-9);
        }
    }

    #[test]
    fn ccr_lambda_reaches_the_ray() {
        // A and C both lie on the y = 2x ray, so λ is not unique; any optimum
        // must reproduce the contracted input and the output exactly.
        let d = five_farms();
        for k in [E, B] {
            let s = evaluate_ccr(&d, k, &cfg()).unwrap();
            let x_ref: f64 = s.lambda.iter().zip(d.farms()).map(|(l, f)| l * f.inputs[0]).sum();
            let y_ref: f64 = s.lambda.iter().zip(d.farms()).map(|(l, f)| l * f.outputs[0]).sum();
            assert_abs_diff_eq!(x_ref, s.score * d.farm(k).inputs[0], epsilon = 1e-9);
            assert_abs_diff_eq!(y_ref, d.farm(k).outputs[0], epsilon = 1e-9);
            let peers: Vec<usize> = (0..5).filter(|&j| s.lambda[j] > 1e-9).collect();
            assert!(peers.iter().all(|p| *p == A || *p == C), "{peers:?}");
        }
        let b = evaluate_ccr(&d, B, &cfg()).unwrap();
        let lam = b.lambda[A] + 1.5 * b.lambda[C];
        assert_abs_diff_eq!(lam, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn bcc_scores_on_fixture() {
        let d = five_farms();
        let e = evaluate_bcc(&d, E, &cfg()).unwrap();
        assert_abs_diff_eq!(e.score, 1.0, epsilon = 1e-9);
        let dd = evaluate_bcc(&d, D, &cfg()).unwrap();
        assert_abs_diff_eq!(dd.score, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(dd.lambda[A], 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(dd.lambda[C], 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(dd.sum_lambda(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn single_farm_is_efficient() {
        let d = Dataset::from_matrices(&[vec![3.0, 7.0]], &[vec![2.0]]).unwrap();
        assert_abs_diff_eq!(evaluate_ccr(&d, 0, &cfg()).unwrap().score, 1.0, epsilon = 1e-12);
        let b = evaluate_bcc(&d, 0, &cfg()).unwrap();
        assert_abs_diff_eq!(b.score, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.lambda[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn output_expansion_is_reciprocal_under_crs() {
        let d = five_farms();
        for k in 0..5 {
            let theta = evaluate_ccr(&d, k, &cfg()).unwrap().score;
            let phi = evaluate_output_expansion(&d, k, Technology::Crs, &cfg()).unwrap().score;
            assert_abs_diff_eq!(theta * phi, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn out_of_range_index() {
        let d = five_farms();
        assert_eq!(
            evaluate_ccr(&d, 9, &cfg()).unwrap_err(),
            DeaError::FarmIndex { index: 9, len: 5 }
        );
    }
}
