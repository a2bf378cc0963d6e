mod common;

use common::{dataset, dataset_2d, dataset_2d_int, in_pps_2d};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use udea_core::{is_extreme, solve_all, solve_nominal, DeaDataset};

/// Smallest input reachable at output `>= y` on the segment between two points.
fn segment_min_input(a: (f64, f64), b: (f64, f64), y: f64) -> Option<f64> {
    // t*a + (1-t)*b, need t*(a.1 - b.1) >= y - b.1
    let (coef, rhs) = (a.1 - b.1, y - b.1);
    let (lo, hi) = if coef.abs() < 1e-15 {
        if rhs > 1e-12 {
            return None;
        }
        (0.0, 1.0)
    } else if coef > 0.0 {
        ((rhs / coef).max(0.0), 1.0)
    } else {
        (0.0, (rhs / coef).min(1.0))
    };
    if lo > hi + 1e-12 {
        return None;
    }
    let x = |t: f64| t * a.0 + (1.0 - t) * b.0;
    Some(x(lo).min(x(hi.max(lo))))
}

fn score_2d(ds: &DeaDataset, i: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (0..ds.len()).map(|k| (ds.input(0, k), ds.output(0, k))).collect();
    let y = pts[i].1;
    let mut best = f64::INFINITY;
    for a in 0..pts.len() {
        for b in a..pts.len() {
            if let Some(x) = segment_min_input(pts[a], pts[b], y) {
                best = best.min(x);
            }
        }
    }
    best / pts[i].0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scores_match_geometric_oracle_in_2d(ds in dataset_2d(1, 8)) {
        for r in solve_all(&ds).unwrap() {
            prop_assert!((r.score - score_2d(&ds, r.dmu)).abs() < 1e-9);
        }
    }

    #[test]
    fn scores_lie_in_unit_interval(ds in dataset(4, 10)) {
        for r in solve_all(&ds).unwrap() {
            prop_assert!(r.score > 0.0 && r.score <= 1.0 + 1e-9);
            prop_assert!(r.input_slacks.iter().chain(&r.output_slacks).all(|s| *s >= 0.0));
            let total: f64 = r.lambda.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn inefficient_dmus_have_a_binding_input(ds in dataset(4, 10)) {
        for r in solve_all(&ds).unwrap() {
            if !r.is_efficient() {
                prop_assert!(!r.binding_inputs.is_empty());
            }
        }
    }

    #[test]
    fn solving_is_deterministic(ds in dataset(4, 10)) {
        prop_assert_eq!(solve_all(&ds).unwrap(), solve_all(&ds).unwrap());
    }

    #[test]
    fn rescaling_variables_leaves_scores_alone(ds in dataset(4, 10), seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let factors: Vec<f64> = (0..ds.num_inputs() + ds.num_outputs())
            .map(|_| 10f64.powf(rng.random_range(-2.0..2.0)))
            .collect();
        let scaled = ds.scaled(&factors).unwrap();
        for (a, b) in solve_all(&ds).unwrap().iter().zip(solve_all(&scaled).unwrap()) {
            prop_assert!((a.score - b.score).abs() <= 1e-7, "{} vs {}", a.score, b.score);
        }
    }

    #[test]
    fn removing_a_dmu_never_lowers_a_score(ds in dataset(4, 8), drop in any::<prop::sample::Index>()) {
        let gone = drop.index(ds.len());
        let keep: Vec<usize> = (0..ds.len()).filter(|&i| i != gone).collect();
        let smaller = ds.subset(&keep).unwrap();
        for (pos, &i) in keep.iter().enumerate() {
            let before = solve_nominal(&ds, i).unwrap().score;
            let after = solve_nominal(&smaller, pos).unwrap().score;
            prop_assert!(after >= before - 1e-9);
        }
    }

    #[test]
    fn extreme_test_matches_hull_membership(ds in dataset_2d_int(7)) {
        let pts: Vec<(f64, f64)> = (0..ds.len()).map(|k| (ds.input(0, k), ds.output(0, k))).collect();
        for i in 0..ds.len() {
            let others: Vec<(f64, f64)> = pts.iter().copied().filter(|p| *p != pts[i]).collect();
            let expected = others.is_empty() || !in_pps_2d(&others, pts[i].0, pts[i].1);
            prop_assert_eq!(is_extreme(&ds, i).unwrap(), expected, "dmu {}", i);
        }
    }

    #[test]
    fn extreme_dmus_are_efficient(ds in dataset(4, 8)) {
        for i in 0..ds.len() {
            if is_extreme(&ds, i).unwrap() {
                prop_assert!(solve_nominal(&ds, i).unwrap().is_efficient());
            }
        }
    }
}
