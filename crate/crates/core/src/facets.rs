//! Brute-force enumeration of the efficient facets of the production
//! possibility set and the exact minimum-uncertainty solve built on it.
//!
//! With `Φ = N + M`, every facet is spanned by some `s` extreme DMUs together
//! with `Φ - s` free-disposal directions (`+e` on an input, `-e` on an
//! output). Each such subset with a one-dimensional normal space is tested
//! as a supporting hyperplane.

use crate::dataset::DeaDataset;
use crate::dea;
use crate::error::{DeaError, Result};
use crate::geometry::{min_uncertainty_to_facet, FacetKind, Hyperplane};
use crate::lp::dot;
use crate::robust::{robust_efficiency_with, UncertaintyConfig};
use crate::udea::{bisect, reaches_efficiency, within_cap, Capability, SolveMethod, UdeaOutcome};

/// Tolerance of the supporting test, relative to `1 + |d|`.
pub const SUPPORT_TOL: f64 = 1e-7;
/// Coefficient vectors closer than this (after normalisation) are the same facet.
pub const DEDUP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacetLimits {
    /// Largest `N + M`.
    pub max_dimension: usize,
    /// Largest number of DMUs.
    pub max_dmus: usize,
}

impl Default for FacetLimits {
    fn default() -> Self {
        FacetLimits {
            max_dimension: 4,
            max_dmus: 64,
        }
    }
}

/// Free-disposal recession direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Recession {
    /// `+e_n` in input `n`.
    Input(usize),
    /// `-e_m` in output `m`.
    Output(usize),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FacetSet {
    /// Unit-normal facets in canonical order.
    pub facets: Vec<Hyperplane>,
    /// Extreme DMUs lying on each facet.
    pub generators: Vec<Vec<usize>>,
    /// Recession directions parallel to each facet.
    pub directions: Vec<Vec<Recession>>,
}

impl FacetSet {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Generator names joined by `-`, then `;` and the direction names,
    /// e.g. `B-C`, `A;-y`, `D;+x`.
    pub fn label(&self, ds: &DeaDataset, k: usize) -> String {
        let mut s = self.generators[k]
            .iter()
            .map(|&i| ds.name(i))
            .collect::<Vec<_>>()
            .join("-");
        if !self.directions[k].is_empty() {
            let dirs: Vec<String> = self.directions[k]
                .iter()
                .map(|d| match *d {
                    Recession::Input(n) => format!("+{}", ds.input_names()[n]),
                    Recession::Output(m) => format!("-{}", ds.output_names()[m]),
                })
                .collect();
            s.push(';');
            s.push_str(&dirs.join(","));
        }
        s
    }

    pub fn labels(&self, ds: &DeaDataset) -> Vec<String> {
        (0..self.len()).map(|k| self.label(ds, k)).collect()
    }
}

fn recession_vector(dir: Recession, n_in: usize, dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    match dir {
        Recession::Input(n) => v[n] = 1.0,
        Recession::Output(m) => v[n_in + m] = -1.0,
    }
    v
}

/// Unit vector spanning the null space of `rows` (each of length `dim`), or
/// `None` when that space is not one-dimensional.
fn null_vector(rows: &[Vec<f64>], dim: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let scale = a.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return if dim == 1 { Some(vec![1.0]) } else { None };
    }
    let tol = 1e-10 * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == a.len() {
            break;
        }
        let best = (r..a.len()).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[best][c].abs() <= tol {
            continue;
        }
        a.swap(r, best);
        let p = a[r][c];
        for v in a[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0.0 {
                let f = row[c];
                row.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != dim {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut w = vec![0.0; dim];
    w[free] = 1.0;
    for (row, &c) in pivots.iter().enumerate() {
        w[c] = -a[row][free];
    }
    let norm = dot(&w, &w).sqrt();
    Some(w.into_iter().map(|v| v / norm).collect())
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn supports(points: &[Vec<f64>], w: &[f64], d: f64, n_in: usize) -> bool {
    let tol = SUPPORT_TOL;
    let disposal_ok = w[..n_in].iter().all(|&a| a >= -tol) && w[n_in..].iter().all(|&b| b <= tol);
    disposal_ok && points.iter().all(|p| dot(w, p) >= d - tol * (1.0 + d.abs()))
}

fn canonical_cmp(a: &(Vec<f64>, f64), b: &(Vec<f64>, f64)) -> std::cmp::Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        match y.total_cmp(x) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    b.1.total_cmp(&a.1)
}

fn same_facet(a: &(Vec<f64>, f64), b: &(Vec<f64>, f64)) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| (x - y).abs() <= DEDUP_TOL) && (a.1 - b.1).abs() <= DEDUP_TOL * (1.0 + a.1.abs())
}

pub fn enumerate_efficient_facets(ds: &DeaDataset) -> Result<FacetSet> {
    enumerate_efficient_facets_with(ds, &FacetLimits::default())
}

pub fn enumerate_efficient_facets_with(ds: &DeaDataset, limits: &FacetLimits) -> Result<FacetSet> {
    let n_in = ds.num_inputs();
    let dim = n_in + ds.num_outputs();
    if dim > limits.max_dimension {
        return Err(DeaError::SizeLimit {
            what: "number of inputs plus outputs",
            got: dim,
            limit: limits.max_dimension,
        });
    }
    if ds.len() > limits.max_dmus {
        return Err(DeaError::SizeLimit {
            what: "number of DMUs",
            got: ds.len(),
            limit: limits.max_dmus,
        });
    }
    let points: Vec<Vec<f64>> = (0..ds.len()).map(|i| ds.point(i)).collect();
    let extremes = dea::extreme_dmus(ds)?;
    let all_dirs: Vec<Recession> = (0..n_in)
        .map(Recession::Input)
        .chain((0..ds.num_outputs()).map(Recession::Output))
        .collect();
    let dir_vecs: Vec<Vec<f64>> = all_dirs.iter().map(|&d| recession_vector(d, n_in, dim)).collect();

    let mut found: Vec<(Vec<f64>, f64)> = Vec::new();
    for s in 1..=dim.min(extremes.len()) {
        for_each_combination(extremes.len(), s, |pick| {
            let base = &points[extremes[pick[0]]];
            let spanning: Vec<Vec<f64>> = pick[1..]
                .iter()
                .map(|&e| points[extremes[e]].iter().zip(base).map(|(p, b)| p - b).collect())
                .collect();
            for_each_combination(all_dirs.len(), dim - s, |dsel| {
                let mut rows = spanning.clone();
                rows.extend(dsel.iter().map(|&j| dir_vecs[j].clone()));
                let Some(w) = null_vector(&rows, dim) else {
                    return;
                };
                for sign in [1.0, -1.0] {
                    let mut w: Vec<f64> = w.iter().map(|v| sign * v).collect();
                    for v in w.iter_mut() {
                        if v.abs() < 1e-12 {
                            *v = 0.0;
                        }
                    }
                    let d = dot(&w, base);
                    if supports(&points, &w, d, n_in) {
                        found.push((w, d));
                    }
                }
            });
        });
    }

    found.sort_by(canonical_cmp);
    found.dedup_by(|b, a| same_facet(a, b));

    let mut set = FacetSet::default();
    for (w, d) in found {
        let on = |p: &[f64]| (dot(&w, p) - d).abs() <= SUPPORT_TOL * (1.0 + d.abs());
        let generators: Vec<usize> = extremes.iter().copied().filter(|&i| on(&points[i])).collect();
        let directions: Vec<Recession> = all_dirs
            .iter()
            .zip(&dir_vecs)
            .filter(|(_, v)| dot(&w, v).abs() <= SUPPORT_TOL)
            .map(|(d, _)| *d)
            .collect();
        let h = Hyperplane::new(w[..n_in].to_vec(), w[n_in..].to_vec(), d);
        set.facets.push(h);
        set.generators.push(generators);
        set.directions.push(directions);
    }
    Ok(set)
}

/// Exact υ* for `dmu` under cap `nu`, with default floor and size limits.
pub fn exact_udea(ds: &DeaDataset, dmu: usize, nu: f64) -> Result<UdeaOutcome> {
    let facets = enumerate_efficient_facets(ds)?;
    exact_udea_on(ds, &facets, dmu, &UncertaintyConfig::default().with_nu(nu))
}

/// Exact υ* against a precomputed facet set; uses `cfg.nu` and `cfg.eps`.
///
/// The facet minimum is exact while no transformed datum hits its floor.
/// When a floor is active there and the DMU is still short of efficiency,
/// the answer is moved up by bisection on the robust score.
pub fn exact_udea_on(ds: &DeaDataset, facets: &FacetSet, dmu: usize, cfg: &UncertaintyConfig) -> Result<UdeaOutcome> {
    ds.check_index(dmu)?;
    let nominal = robust_efficiency_with(ds, dmu, 0.0, cfg.eps)?.score;
    let mut trace = vec![(0.0, nominal)];
    let mut best: Option<(f64, bool, usize)> = None;
    for (k, h) in facets.facets.iter().enumerate() {
        let fu = min_uncertainty_to_facet(ds, dmu, h);
        let strict = !fu.attainable;
        let better = match best {
            None => true,
            Some((v, s, _)) => fu.value < v || (fu.value == v && s && !strict),
        };
        if better {
            best = Some((fu.value, strict, k));
        }
    }
    let (mut upsilon, mut strict, facet) = match best {
        Some((v, s, k)) => (v, s, Some(k)),
        None => (f64::INFINITY, false, None),
    };
    let mut method = SolveMethod::Exact;
    if reaches_efficiency(nominal) {
        upsilon = 0.0;
        strict = false;
    } else if upsilon.is_finite() && clamp_active(ds, dmu, upsilon, cfg.eps) {
        let probe = if strict { upsilon * (1.0 + 1e-9) + 1e-9 } else { upsilon };
        let s = robust_efficiency_with(ds, dmu, probe, cfg.eps)?.score;
        if !reaches_efficiency(s) {
            upsilon = refine_past_clamp(ds, dmu, upsilon, cfg.eps)?;
            strict = false;
            method = SolveMethod::ExactClampRefined;
        }
    }

    let capable = upsilon.is_finite() && within_cap(upsilon, strict, cfg.nu);
    let mut at = upsilon.min(cfg.nu);
    if capable && strict {
        at = (upsilon * (1.0 + 1e-9) + 1e-9).min(cfg.nu);
    }
    let gamma = if at.is_finite() {
        let g = robust_efficiency_with(ds, dmu, at, cfg.eps)?.score;
        if at > 0.0 {
            trace.push((at, g));
        }
        g
    } else {
        nominal
    };
    Ok(UdeaOutcome {
        dmu,
        upsilon: upsilon.is_finite().then_some(upsilon),
        gamma,
        capability: if capable {
            Capability::Capable
        } else {
            Capability::Incapable
        },
        facet,
        strict,
        trace,
        bracket: None,
        method,
    })
}

/// Whether the box of half-width `sigma` pushes some datum onto its floor.
fn clamp_active(ds: &DeaDataset, dmu: usize, sigma: f64, eps: f64) -> bool {
    let input_floor = ds.inputs_of(dmu).iter().any(|&x| x - sigma < x.min(eps));
    let output_floor = (0..ds.num_outputs())
        .filter(|&m| ds.output_roles()[m] == crate::dataset::VariableRole::Discretionary)
        .any(|m| (0..ds.len()).any(|i| i != dmu && ds.output(m, i) < sigma));
    input_floor || output_floor
}

fn refine_past_clamp(ds: &DeaDataset, dmu: usize, lo: f64, eps: f64) -> Result<f64> {
    let score_at = |s: f64| robust_efficiency_with(ds, dmu, s, eps).map(|r| r.score);
    let mut hi = ds.inputs_of(dmu).into_iter().fold(lo.max(eps), f64::max);
    let mut hi_score = score_at(hi)?;
    let mut doublings = 0;
    while !reaches_efficiency(hi_score) {
        if doublings == 64 {
            return Ok(f64::INFINITY);
        }
        hi = 2.0 * hi + 1.0;
        hi_score = score_at(hi)?;
        doublings += 1;
    }
    let (_, hi, _) = bisect(lo, hi, hi_score, 1e-10 * (1.0 + hi), score_at)?;
    Ok(hi)
}

/// Facet kinds in the order of a facet set, for reporting.
pub fn facet_kinds(set: &FacetSet) -> Vec<FacetKind> {
    set.facets.iter().map(|h| h.kind).collect()
}
