//! Input-oriented BCC envelopment model.
//!
//! For DMU `k` the program is
//!
//! ```text
//! min θ  s.t.  Y λ >= y^k,  X λ - θ x^k <= 0,  Σ λ = 1,  λ >= 0, θ >= 0
//! ```
//!
//! Variables are laid out as `λ_1..λ_I` followed by `θ`. Every output and
//! input row is divided by the evaluated DMU's own value (by the row maximum
//! when that is zero), so `θ` carries unit coefficients and solver tolerances
//! are measured in score units however small the DMU's data are.

use crate::dataset::DeaDataset;
use crate::error::{DeaError, Result};
use crate::lp::{self, Direction, LinearProgram, LpStatus, Sense};

/// `θ >= 1 - SCORE_TOL` counts as efficient.
pub const SCORE_TOL: f64 = 1e-6;
/// Intensities above this are reported as peers.
pub const PEER_TOL: f64 = 1e-9;
/// Relative slack below which an input constraint is considered binding.
pub const BINDING_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyResult {
    pub dmu: usize,
    pub score: f64,
    pub lambda: Vec<f64>,
    /// `θ x_n - X_n λ`, one per input.
    pub input_slacks: Vec<f64>,
    /// `Y_m λ - y_m`, one per output.
    pub output_slacks: Vec<f64>,
    pub peers: Vec<usize>,
    /// Inputs whose constraint has zero slack.
    pub binding_inputs: Vec<usize>,
}

impl EfficiencyResult {
    pub fn is_efficient(&self) -> bool {
        self.score >= 1.0 - SCORE_TOL
    }
}

pub fn build_envelopment_lp(ds: &DeaDataset, dmu: usize) -> Result<LinearProgram> {
    ds.check_index(dmu)?;
    let count = ds.len();
    let mut objective = vec![0.0; count + 1];
    objective[count] = 1.0;
    let mut lp = LinearProgram::new(Direction::Minimize, objective);

    let unit = |row: &[f64], own: f64| {
        if own > 0.0 {
            own
        } else {
            row.iter().fold(0.0_f64, |a, &b| a.max(b)).max(1.0)
        }
    };
    for m in 0..ds.num_outputs() {
        let own = ds.output(m, dmu);
        let s = unit(ds.output_row(m), own);
        let mut row: Vec<f64> = ds.output_row(m).iter().map(|v| v / s).collect();
        row.push(0.0);
        lp.add_constraint(row, Sense::Ge, own / s);
    }
    for n in 0..ds.num_inputs() {
        let own = ds.input(n, dmu);
        let s = unit(ds.input_row(n), own);
        let mut row: Vec<f64> = ds.input_row(n).iter().map(|v| v / s).collect();
        row.push(-own / s);
        lp.add_constraint(row, Sense::Le, 0.0);
    }
    let mut convexity = vec![1.0; count];
    convexity.push(0.0);
    lp.add_constraint(convexity, Sense::Eq, 1.0);
    Ok(lp)
}

/// Solve an envelopment program built by [`build_envelopment_lp`] (possibly
/// with extra bounds) and derive slacks, peers and binding inputs from `λ`.
pub(crate) fn solve_envelopment(ds: &DeaDataset, dmu: usize, lp: &LinearProgram) -> Result<EfficiencyResult> {
    let sol = lp::solve_lp(lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(DeaError::UnexpectedStatus {
            dmu,
            status: sol.status,
        });
    }
    let count = ds.len();
    let lambda: Vec<f64> = sol.x[..count].to_vec();
    let score = sol.x[count];
    Ok(analyse(ds, dmu, lambda, score))
}

fn analyse(ds: &DeaDataset, dmu: usize, lambda: Vec<f64>, score: f64) -> EfficiencyResult {
    let input_slacks: Vec<f64> = (0..ds.num_inputs())
        .map(|n| {
            let used = lp::dot(ds.input_row(n), &lambda);
            (score * ds.input(n, dmu) - used).max(0.0)
        })
        .collect();
    let output_slacks = (0..ds.num_outputs())
        .map(|m| (lp::dot(ds.output_row(m), &lambda) - ds.output(m, dmu)).max(0.0))
        .collect();
    let binding_inputs = input_slacks
        .iter()
        .enumerate()
        .filter(|(n, s)| **s <= BINDING_TOL * (1.0 + ds.input(*n, dmu)))
        .map(|(n, _)| n)
        .collect();
    let peers = lambda
        .iter()
        .enumerate()
        .filter(|(_, l)| **l > PEER_TOL)
        .map(|(i, _)| i)
        .collect();
    EfficiencyResult {
        dmu,
        score,
        lambda,
        input_slacks,
        output_slacks,
        peers,
        binding_inputs,
    }
}

pub fn solve_nominal(ds: &DeaDataset, dmu: usize) -> Result<EfficiencyResult> {
    let lp = build_envelopment_lp(ds, dmu)?;
    solve_envelopment(ds, dmu, &lp)
}

pub fn solve_all(ds: &DeaDataset) -> Result<Vec<EfficiencyResult>> {
    (0..ds.len()).map(|i| solve_nominal(ds, i)).collect()
}

/// Whether DMU `i` is an extreme point of the production possibility set.
///
/// Every DMU sitting at the same point as `i` is removed and the envelopment
/// program is re-solved for `i` against the rest. The point is extreme
/// exactly when it lies outside the remaining set: the program is infeasible
/// or its optimum exceeds 1.
pub fn is_extreme(ds: &DeaDataset, i: usize) -> Result<bool> {
    ds.check_index(i)?;
    let here = ds.point(i);
    let coincident: Vec<usize> = (0..ds.len()).filter(|&k| ds.point(k) == here).collect();
    if coincident.len() == ds.len() {
        return Ok(true);
    }
    let mut lp = build_envelopment_lp(ds, i)?;
    for &k in &coincident {
        lp.set_bounds(k, 0.0, Some(0.0));
    }
    let sol = lp::solve_lp(&lp)?;
    match sol.status {
        LpStatus::Infeasible => Ok(true),
        LpStatus::Optimal => Ok(sol.objective > 1.0 + SCORE_TOL),
        LpStatus::Unbounded => Err(DeaError::UnexpectedStatus {
            dmu: i,
            status: sol.status,
        }),
    }
}

/// Indices of all extreme DMUs.
pub fn extreme_dmus(ds: &DeaDataset) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..ds.len() {
        if is_extreme(ds, i)? {
            out.push(i);
        }
    }
    Ok(out)
}
