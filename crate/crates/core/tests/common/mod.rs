#![allow(dead_code)]

use proptest::prelude::*;
use udea_core::lp::{Direction, LinearProgram, Sense};
use udea_core::{DeaDataset, VariableRole};

pub fn frontier6() -> DeaDataset {
    DeaDataset::builder(["A", "B", "C", "D", "E", "F"])
        .input("x", [1.0, 3.0, 7.0, 10.0, 8.0, 6.0])
        .output("y", [1.0, 4.0, 7.0, 8.0, 5.0, 2.0])
        .build()
        .unwrap()
}

pub fn build(inputs: &[Vec<f64>], outputs: &[Vec<f64>]) -> DeaDataset {
    let count = inputs[0].len();
    let mut b = DeaDataset::builder((0..count).map(|i| format!("d{i}")));
    for (n, row) in inputs.iter().enumerate() {
        b = b.input(format!("x{n}"), row.clone());
    }
    for (m, row) in outputs.iter().enumerate() {
        b = b.output(format!("y{m}"), row.clone());
    }
    b.build().unwrap()
}

/// Values on a 0.1 grid in `[0.5, 10]`.
pub fn value() -> impl Strategy<Value = f64> {
    (5u32..=100).prop_map(|v| v as f64 / 10.0)
}

/// Random dataset with `n_in + n_out <= max_dim` and `2..=max_dmus` DMUs.
pub fn dataset(max_dim: usize, max_dmus: usize) -> impl Strategy<Value = DeaDataset> {
    (1..max_dim, 2..=max_dmus)
        .prop_flat_map(move |(n_in, count)| {
            let n_out = 1..=(max_dim - n_in);
            (Just(n_in), n_out, Just(count))
        })
        .prop_flat_map(|(n_in, n_out, count)| {
            (
                prop::collection::vec(prop::collection::vec(value(), count), n_in),
                prop::collection::vec(prop::collection::vec(value(), count), n_out),
            )
        })
        .prop_map(|(inputs, outputs)| build(&inputs, &outputs))
}

/// One input, one output.
pub fn dataset_2d(min_dmus: usize, max_dmus: usize) -> impl Strategy<Value = DeaDataset> {
    (min_dmus..=max_dmus)
        .prop_flat_map(|count| {
            (
                prop::collection::vec(value(), count),
                prop::collection::vec(value(), count),
            )
        })
        .prop_map(|(x, y)| build(&[x], &[y]))
}

/// Small integer coordinates so that ties and collinear triples are common.
pub fn dataset_2d_int(max_dmus: usize) -> impl Strategy<Value = DeaDataset> {
    (2..=max_dmus)
        .prop_flat_map(|count| {
            (
                prop::collection::vec((1u32..=6).prop_map(f64::from), count),
                prop::collection::vec((1u32..=6).prop_map(f64::from), count),
            )
        })
        .prop_map(|(x, y)| build(&[x], &[y]))
}

#[allow(clippy::needless_range_loop)]
/// Solve `a z = b` for square `a` by Gaussian elimination; `None` if singular.
pub fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-10 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Optimum of a bounded LP with `x >= 0` and finite upper bounds, by
/// enumerating every basic solution. `None` when infeasible.
pub fn vertex_optimum(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_vars();
    // every constraint as an equality candidate `a x = b`
    let mut planes: Vec<(Vec<f64>, f64)> = lp.rows.iter().cloned().zip(lp.rhs.iter().copied()).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e.clone(), 0.0));
        planes.push((e, lp.upper[j].expect("bounded oracle")));
    }
    let feasible = |x: &[f64]| {
        let tol = 1e-7;
        let rows_ok = lp.rows.iter().zip(&lp.senses).zip(&lp.rhs).all(|((row, s), b)| {
            let a: f64 = row.iter().zip(x).map(|(p, q)| p * q).sum();
            match s {
                Sense::Le => a <= b + tol,
                Sense::Ge => a >= b - tol,
                Sense::Eq => (a - b).abs() <= tol,
            }
        });
        rows_ok
            && x.iter()
                .zip(&lp.upper)
                .all(|(v, u)| *v >= -tol && *v <= u.unwrap() + tol)
    };
    let mut best: Option<f64> = None;
    for pick in combinations(planes.len(), n) {
        let a = pick.iter().map(|&p| planes[p].0.clone()).collect();
        let b = pick.iter().map(|&p| planes[p].1).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let v: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                let v = if lp.direction == Direction::Maximize { -v } else { v };
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
    }
    best.map(|v| if lp.direction == Direction::Maximize { -v } else { v })
}

/// Apply an arbitrary perturbation to every discretionary cell, clamping the
/// same way as the box transform: inputs at `min(x, eps)`, outputs at 0.
/// `deltas` lists input cells first (row-major by variable), then outputs.
pub fn perturb(ds: &DeaDataset, deltas: &[f64], eps: f64) -> DeaDataset {
    let count = ds.len();
    let mut k = 0;
    let mut inputs = Vec::new();
    for n in 0..ds.num_inputs() {
        let row: Vec<f64> = ds
            .input_row(n)
            .iter()
            .map(|&x| {
                let v = (x + deltas[k]).max(x.min(eps));
                k += 1;
                v
            })
            .collect();
        inputs.push(row);
    }
    let mut outputs = Vec::new();
    for m in 0..ds.num_outputs() {
        let env = ds.output_roles()[m] == VariableRole::Environmental;
        let row: Vec<f64> = ds
            .output_row(m)
            .iter()
            .map(|&y| {
                let v = if env { y } else { (y + deltas[k]).max(0.0) };
                k += 1;
                v
            })
            .collect();
        outputs.push(row);
    }
    assert_eq!(k, count * (ds.num_inputs() + ds.num_outputs()));
    ds.realisation(inputs, outputs).unwrap()
}

/// Whether `(x, y)` lies in the free-disposal convex hull of the given 2D points.
pub fn in_pps_2d(points: &[(f64, f64)], x: f64, y: f64) -> bool {
    let tol = 1e-9;
    for (a, pa) in points.iter().enumerate() {
        for pb in &points[a..] {
            // t in [0, 1] with t*pa + (1-t)*pb <= x in input, >= y in output
            let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
            let mut ok = true;
            for (coef, rhs) in [(pa.0 - pb.0, x - pb.0), (pb.1 - pa.1, pb.1 - y)] {
                // coef * t <= rhs
                if coef.abs() < 1e-15 {
                    if rhs < -tol {
                        ok = false;
                    }
                } else if coef > 0.0 {
                    hi = hi.min(rhs / coef + tol);
                } else {
                    lo = lo.max(rhs / coef - tol);
                }
            }
            if ok && lo <= hi {
                return true;
            }
        }
    }
    false
}
