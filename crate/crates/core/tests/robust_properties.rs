mod common;

use common::{dataset, dataset_2d, perturb};
use proptest::prelude::*;
use udea_core::robust::DEFAULT_EPS;
use udea_core::{robust_efficiency, robust_efficiency_with, solve_nominal, transform_box, DeaDataset};

fn sign_patterns(cells: usize) -> impl Iterator<Item = Vec<f64>> {
    (0..3usize.pow(cells as u32)).map(move |mut code| {
        (0..cells)
            .map(|_| {
                let s = (code % 3) as f64 - 1.0;
                code /= 3;
                s
            })
            .collect()
    })
}

fn small_cells() -> impl Strategy<Value = DeaDataset> {
    prop_oneof![dataset_2d(2, 4), dataset(3, 2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn scores_rise_with_sigma(ds in dataset(4, 12), dmu in any::<prop::sample::Index>(), top in 0.1f64..6.0) {
        let i = dmu.index(ds.len());
        let mut last = f64::NEG_INFINITY;
        for k in 0..20 {
            let s = robust_efficiency(&ds, i, top * k as f64 / 19.0).unwrap().score;
            prop_assert!(s >= last - 1e-9, "score fell from {} to {}", last, s);
            last = s;
        }
    }

    #[test]
    fn nominal_score_is_a_floor(ds in dataset(4, 10), dmu in any::<prop::sample::Index>(), sigma in 0.0f64..5.0) {
        let i = dmu.index(ds.len());
        let nominal = solve_nominal(&ds, i).unwrap().score;
        prop_assert!(robust_efficiency(&ds, i, sigma).unwrap().score >= nominal - 1e-9);
    }

    #[test]
    fn large_enough_box_makes_everyone_efficient(ds in dataset(4, 10)) {
        for i in 0..ds.len() {
            let top = ds.inputs_of(i).into_iter().fold(0.0, f64::max);
            let r = robust_efficiency(&ds, i, top - DEFAULT_EPS).unwrap();
            prop_assert!(r.is_efficient(), "dmu {} scored {}", i, r.score);
        }
    }

    #[test]
    fn inefficient_dmus_are_never_needed(ds in dataset(4, 8), dmu in any::<prop::sample::Index>(), sigma in 0.0f64..3.0) {
        let i = dmu.index(ds.len());
        let full = robust_efficiency(&ds, i, sigma).unwrap().score;
        for l in 0..ds.len() {
            if l == i || solve_nominal(&ds, l).unwrap().is_efficient() {
                continue;
            }
            let keep: Vec<usize> = (0..ds.len()).filter(|&k| k != l).collect();
            let pos = keep.iter().position(|&k| k == i).unwrap();
            let without = robust_efficiency(&ds.subset(&keep).unwrap(), pos, sigma).unwrap().score;
            prop_assert!((without - full).abs() <= 1e-7, "dropping {} moved {} to {}", l, full, without);
        }
    }

    #[test]
    fn transform_is_the_best_corner(ds in small_cells(), dmu in any::<prop::sample::Index>(), sigma in 0.0f64..4.0) {
        let i = dmu.index(ds.len());
        let cells = ds.len() * (ds.num_inputs() + ds.num_outputs());
        prop_assume!(cells <= 8);
        let best = robust_efficiency(&ds, i, sigma).unwrap().score;
        for pattern in sign_patterns(cells) {
            let deltas: Vec<f64> = pattern.iter().map(|s| s * sigma).collect();
            let realised = perturb(&ds, &deltas, DEFAULT_EPS);
            let s = solve_nominal(&realised, i).unwrap().score;
            prop_assert!(s <= best + 1e-7, "pattern {:?} scored {} above {}", pattern, s, best);
        }
    }

    #[test]
    fn transform_matches_a_corner(ds in small_cells(), dmu in any::<prop::sample::Index>(), sigma in 0.0f64..4.0) {
        let i = dmu.index(ds.len());
        let count = ds.len();
        let mut deltas = Vec::new();
        for _ in 0..ds.num_inputs() {
            deltas.extend((0..count).map(|k| if k == i { -sigma } else { sigma }));
        }
        for _ in 0..ds.num_outputs() {
            deltas.extend((0..count).map(|k| if k == i { sigma } else { -sigma }));
        }
        prop_assert_eq!(perturb(&ds, &deltas, DEFAULT_EPS), transform_box(&ds, i, sigma, DEFAULT_EPS).unwrap());
    }

    #[test]
    fn larger_floor_never_helps(ds in dataset(3, 6), dmu in any::<prop::sample::Index>(), sigma in 0.0f64..6.0) {
        let i = dmu.index(ds.len());
        let low = robust_efficiency_with(&ds, i, sigma, 1e-9).unwrap().score;
        let high = robust_efficiency_with(&ds, i, sigma, 0.25).unwrap().score;
        prop_assert!(high <= low + 1e-9);
    }
}
