mod common;

use common::enumerate_bfs;
use farmeff_core::lp::{solve_lp, LinearProgram, LpStatus, Sense, Tolerances};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn rational(rng: &mut ChaCha8Rng) -> f64 {
    let num = rng.random_range(-6..=6) as f64;
    let den = [1.0, 2.0, 3.0, 4.0][rng.random_range(0..4)];
    num / den
}

/// Bounded random program: the last row caps the sum of variables.
fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.random_range(1..=5);
    let m = rng.random_range(0..=4);
    let mut lp = LinearProgram::minimize((0..n).map(|_| rational(rng)).collect());
    for _ in 0..m {
        let row: Vec<f64> = (0..n).map(|_| rational(rng)).collect();
        let sense = [Sense::Le, Sense::Ge, Sense::Eq][rng.random_range(0..3)];
        let rhs = rational(rng) * 2.0;
        lp.constraint(row, sense, rhs);
    }
    lp.constraint(vec![1.0; n], Sense::Le, 10.0);
    lp
}

#[test]
fn matches_vertex_enumeration_on_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let tol = Tolerances::default();
    let (mut optimal, mut infeasible) = (0, 0);
    for case in 0..200 {
        let lp = random_lp(&mut rng);
        let sol = solve_lp(&lp, &tol).unwrap();
        match enumerate_bfs(&lp) {
            Some((obj, _)) => {
                assert_eq!(sol.status, LpStatus::Optimal, "case {case}\n{lp}");
                assert!((sol.objective - obj).abs() <= 1e-8, "case {case}: {} vs {obj}\n{lp}", sol.objective);
                assert!(lp.max_violation(&sol.values) <= 1e-9, "case {case}");
                optimal += 1;
            }
            None => {
                assert_eq!(sol.status, LpStatus::Infeasible, "case {case}\n{lp}");
                infeasible += 1;
            }
        }
    }
    assert!(optimal > 50 && infeasible > 5, "{optimal} optimal / {infeasible} infeasible");
}

#[test]
fn complementary_slackness_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tol = Tolerances::default();
    for _ in 0..200 {
        let lp = random_lp(&mut rng);
        let sol = solve_lp(&lp, &tol).unwrap();
        if !sol.is_optimal() {
            continue;
        }
        for ((row, &b), &y) in lp.rows().iter().zip(lp.rhs()).zip(&sol.duals) {
            let lhs: f64 = row.iter().zip(&sol.values).map(|(a, v)| a * v).sum();
            assert!((y * (lhs - b)).abs() <= 1e-7, "row residual {}", y * (lhs - b));
        }
        for (j, &v) in sol.values.iter().enumerate() {
            let reduced = lp.objective()[j] - lp.rows().iter().zip(&sol.duals).map(|(r, y)| r[j] * y).sum::<f64>();
            assert!(reduced >= -1e-7, "dual infeasible reduced cost {reduced}");
            assert!((v * reduced).abs() <= 1e-7);
        }
        let dual_obj: f64 = sol.duals.iter().zip(lp.rhs()).map(|(y, b)| y * b).sum();
        assert!((dual_obj - sol.objective).abs() <= 1e-7);
    }
}

#[test]
fn objective_scaling_keeps_argmin() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let tol = Tolerances::default();
    for _ in 0..100 {
        let lp = random_lp(&mut rng);
        let base = solve_lp(&lp, &tol).unwrap();
        if !base.is_optimal() {
            continue;
        }
        let c = 3.5;
        let mut scaled = LinearProgram::minimize(lp.objective().iter().map(|v| v * c).collect());
        for ((row, &s), &b) in lp.rows().iter().zip(lp.senses()).zip(lp.rhs()) {
            scaled.constraint(row.clone(), s, b);
        }
        let sol = solve_lp(&scaled, &tol).unwrap();
        assert!((sol.objective - c * base.objective).abs() <= 1e-8);
        // the argmin may be a different vertex of an optimal face, but it must be optimal for the original
        assert!((lp.evaluate(&sol.values) - base.objective).abs() <= 1e-8);
    }
}

#[test]
fn same_input_same_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let lp = random_lp(&mut rng);
    let a = solve_lp(&lp, &Tolerances::default()).unwrap();
    let b = solve_lp(&lp, &Tolerances::default()).unwrap();
    assert_eq!(a.status, b.status);
    assert_eq!(a.values, b.values);
    assert_eq!(a.duals, b.duals);
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
}
