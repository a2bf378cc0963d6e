//! Dense two-phase simplex.
//!
//! Problems here are small (a few hundred columns at most) and dense, so the
//! solver works on a full tableau. Bland's rule is used for both the entering
//! and the leaving variable, which guarantees termination on the degenerate
//! bases that envelopment programs produce all the time.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `a·x <= b`
    Le,
    /// `a·x >= b`
    Ge,
    /// `a·x = b`
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Malformed(String),
    #[error("simplex did not terminate within {0} pivots")]
    IterationLimit(usize),
}

/// A linear program over bounded-below variables.
///
/// Every variable has a finite lower bound (0 unless changed) and an optional
/// upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub direction: Direction,
    pub objective: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<Option<f64>>,
}

impl LinearProgram {
    pub fn new(direction: Direction, objective: Vec<f64>) -> Self {
        let n = objective.len();
        LinearProgram {
            direction,
            objective,
            rows: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> &mut Self {
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: Option<f64>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.senses.len() != self.rows.len() || self.rhs.len() != self.rows.len() {
            return Err(LpError::Malformed(format!(
                "{} rows but {} senses and {} right-hand sides",
                self.rows.len(),
                self.senses.len(),
                self.rhs.len()
            )));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::Malformed("bound vectors do not match objective length".into()));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return Err(LpError::Malformed(format!(
                    "row {r} has {} coefficients, expected {n}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) || !self.rhs[r].is_finite() {
                return Err(LpError::Malformed(format!("row {r} has a non-finite entry")));
            }
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(LpError::Malformed("objective has a non-finite coefficient".into()));
        }
        for j in 0..n {
            if !self.lower[j].is_finite() {
                return Err(LpError::Malformed(format!("variable {j} has a non-finite lower bound")));
            }
            if let Some(u) = self.upper[j] {
                if !u.is_finite() {
                    return Err(LpError::Malformed(format!("variable {j} has a non-finite upper bound")));
                }
            }
        }
        Ok(())
    }

    /// Left-hand side `a_r·x` of every row.
    pub fn activities(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|row| dot(row, x)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value; `±inf` when the program is infeasible or unbounded.
    pub objective: f64,
    /// Primal values (empty unless optimal).
    pub x: Vec<f64>,
    /// Non-negative slack per row for `<=`/`>=` rows, `b - a·x` for equalities.
    pub row_slacks: Vec<f64>,
    /// Basic columns of the final standard-form tableau.
    pub basis: Vec<usize>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub feasibility_tol: f64,
    pub optimality_tol: f64,
    /// Smallest magnitude accepted as a pivot element.
    pub pivot_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            feasibility_tol: 1e-9,
            optimality_tol: 1e-9,
            pivot_tol: 1e-9,
            max_iterations: 50_000,
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    solve_lp_with(lp, &SolverOptions::default())
}

pub fn solve_lp_with(lp: &LinearProgram, opts: &SolverOptions) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let n = lp.num_vars();

    // Shift to x = lower + x', x' >= 0, and turn upper bounds into rows.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(lp.num_rows() + n);
    let mut senses = Vec::with_capacity(lp.num_rows() + n);
    let mut rhs = Vec::with_capacity(lp.num_rows() + n);
    for (r, row) in lp.rows.iter().enumerate() {
        rows.push(row.clone());
        senses.push(lp.senses[r]);
        rhs.push(lp.rhs[r] - dot(row, &lp.lower));
    }
    for j in 0..n {
        if let Some(u) = lp.upper[j] {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            rows.push(row);
            senses.push(Sense::Le);
            rhs.push(u - lp.lower[j]);
        }
    }
    for r in 0..rows.len() {
        if rhs[r] < 0.0 {
            rows[r].iter_mut().for_each(|v| *v = -*v);
            rhs[r] = -rhs[r];
            senses[r] = match senses[r] {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }

    let mut cost: Vec<f64> = match lp.direction {
        Direction::Minimize => lp.objective.clone(),
        Direction::Maximize => lp.objective.iter().map(|c| -c).collect(),
    };
    let col_scale = equilibrate_columns(&mut rows, n);
    for (c, s) in cost.iter_mut().zip(&col_scale) {
        *c *= s;
    }

    let mut tab = Tableau::build(&rows, &senses, &rhs, n);
    let scale = 1.0 + rhs.iter().fold(0.0_f64, |a, b| a.max(b.abs()));

    let infinite = |status: LpStatus| {
        let sign = match (status, lp.direction) {
            (LpStatus::Infeasible, Direction::Minimize) | (LpStatus::Unbounded, Direction::Maximize) => 1.0,
            _ => -1.0,
        };
        LpSolution {
            status,
            objective: sign * f64::INFINITY,
            x: Vec::new(),
            row_slacks: Vec::new(),
            basis: Vec::new(),
        }
    };

    // Phase 1: minimise the sum of artificials.
    if tab.first_artificial < tab.cols {
        let mut phase1 = vec![0.0; tab.cols];
        for c in phase1.iter_mut().skip(tab.first_artificial) {
            *c = 1.0;
        }
        tab.set_costs(&phase1);
        tab.run(tab.cols, opts)?;
        if tab.objective_value() > opts.feasibility_tol * scale {
            return Ok(infinite(LpStatus::Infeasible));
        }
        tab.drive_out_artificials(opts);
    }

    // Phase 2 on the structural and slack columns only.
    let mut phase2 = vec![0.0; tab.cols];
    phase2[..n].copy_from_slice(&cost);
    tab.set_costs(&phase2);
    if !tab.run(tab.first_artificial, opts)? {
        return Ok(infinite(LpStatus::Unbounded));
    }

    let mut x = lp.lower.clone();
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] += col_scale[b] * tab.rhs(r).max(0.0);
        }
    }
    let activities = lp.activities(&x);
    let row_slacks = lp
        .senses
        .iter()
        .zip(activities.iter().zip(&lp.rhs))
        .map(|(s, (a, b))| match s {
            Sense::Le | Sense::Eq => b - a,
            Sense::Ge => a - b,
        })
        .collect();

    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective: dot(&lp.objective, &x),
        x,
        row_slacks,
        basis: tab.basis.clone(),
    })
}

fn power_of_two_near(v: f64) -> f64 {
    2f64.powi(v.log2().round() as i32)
}

/// Scale every column so its largest entry is within a factor of two of 1.
/// Powers of two keep the scaling exact. Returns the factors: original
/// variable `j` equals `factor[j]` times the scaled one.
fn equilibrate_columns(rows: &mut [Vec<f64>], n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let big = rows.iter().fold(0.0_f64, |m, row| m.max(row[j].abs()));
            if big == 0.0 {
                return 1.0;
            }
            let s = power_of_two_near(1.0 / big);
            rows.iter_mut().for_each(|row| row[j] *= s);
            s
        })
        .collect()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-major tableau `[A | b]` plus a reduced-cost row.
struct Tableau {
    data: Vec<f64>,
    m: usize,
    /// Number of columns excluding the right-hand side.
    cols: usize,
    first_artificial: usize,
    basis: Vec<usize>,
    /// Reduced costs; the last entry holds minus the objective value.
    costs: Vec<f64>,
    /// Costs as installed, used to re-price the basis.
    raw: Vec<f64>,
    /// The initial tableau, used to rebuild the current one from scratch.
    orig: Vec<f64>,
}

impl Tableau {
    fn build(rows: &[Vec<f64>], senses: &[Sense], rhs: &[f64], n: usize) -> Self {
        let m = rows.len();
        let n_slack = senses.iter().filter(|s| **s != Sense::Eq).count();
        let n_art = senses.iter().filter(|s| **s != Sense::Le).count();
        let first_artificial = n + n_slack;
        let cols = first_artificial + n_art;
        let width = cols + 1;
        let mut data = vec![0.0; m * width];
        let mut basis = vec![0; m];
        let (mut slack, mut art) = (n, first_artificial);
        for r in 0..m {
            let line = &mut data[r * width..(r + 1) * width];
            line[..n].copy_from_slice(&rows[r]);
            line[cols] = rhs[r];
            match senses[r] {
                Sense::Le => {
                    line[slack] = 1.0;
                    basis[r] = slack;
                    slack += 1;
                }
                Sense::Ge => {
                    line[slack] = -1.0;
                    slack += 1;
                    line[art] = 1.0;
                    basis[r] = art;
                    art += 1;
                }
                Sense::Eq => {
                    line[art] = 1.0;
                    basis[r] = art;
                    art += 1;
                }
            }
        }
        Tableau {
            orig: data.clone(),
            data,
            m,
            cols,
            first_artificial,
            basis,
            costs: vec![0.0; cols + 1],
            raw: vec![0.0; cols],
        }
    }

    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    /// Objective at the current basic solution, from the basic values.
    fn objective_value(&self) -> f64 {
        (0..self.m).map(|r| self.raw[self.basis[r]] * self.rhs(r)).sum()
    }

    /// Install raw costs and price out the current basis.
    fn set_costs(&mut self, raw: &[f64]) {
        self.raw.copy_from_slice(raw);
        self.reprice();
    }

    /// Recompute reduced costs from the raw costs, discarding accumulated drift.
    fn reprice(&mut self) {
        let w = self.width();
        self.costs.iter_mut().for_each(|c| *c = 0.0);
        self.costs[..self.cols].copy_from_slice(&self.raw);
        for r in 0..self.m {
            let cb = self.raw[self.basis[r]];
            if cb != 0.0 {
                for c in 0..w {
                    self.costs[c] -= cb * self.data[r * w + c];
                }
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width();
        let p = self.data[pr * w + pc];
        for c in 0..w {
            self.data[pr * w + c] /= p;
        }
        self.data[pr * w + pc] = 1.0;
        for r in 0..self.m {
            if r == pr {
                continue;
            }
            let f = self.data[r * w + pc];
            if f != 0.0 {
                for c in 0..w {
                    self.data[r * w + c] -= f * self.data[pr * w + c];
                }
                self.data[r * w + pc] = 0.0;
            }
        }
        let f = self.costs[pc];
        if f != 0.0 {
            for c in 0..w {
                self.costs[c] -= f * self.data[pr * w + c];
            }
            self.costs[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Bland-rule simplex over columns `< allowed`. Returns false if unbounded.
    fn run(&mut self, allowed: usize, opts: &SolverOptions) -> Result<bool, LpError> {
        let mut fresh = false;
        for _ in 0..opts.max_iterations {
            let Some(pc) = (0..allowed).find(|&c| self.costs[c] < -opts.optimality_tol) else {
                if fresh {
                    return Ok(true);
                }
                self.reinvert();
                self.reprice();
                fresh = true;
                continue;
            };
            fresh = false;
            let mut best: Option<(f64, usize, usize)> = None;
            for r in 0..self.m {
                let a = self.at(r, pc);
                if a > opts.pivot_tol {
                    let ratio = self.rhs(r).max(0.0) / a;
                    let better = match best {
                        None => true,
                        Some((br, _, bb)) => {
                            ratio < br - 1e-12 * (1.0 + br.abs())
                                || (ratio <= br + 1e-12 * (1.0 + br.abs()) && self.basis[r] < bb)
                        }
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            match best {
                Some((_, pr, _)) => self.pivot(pr, pc),
                None => return Ok(false),
            }
        }
        Err(LpError::IterationLimit(opts.max_iterations))
    }

    /// Pivot zero-level artificials out of the basis; drop rows that are redundant.
    fn drive_out_artificials(&mut self, opts: &SolverOptions) {
        let mut r = 0;
        while r < self.m {
            if self.basis[r] >= self.first_artificial {
                let entering = (0..self.first_artificial).find(|&c| self.at(r, c).abs() > opts.pivot_tol);
                match entering {
                    Some(c) => {
                        self.pivot(r, c);
                        r += 1;
                    }
                    None => self.remove_row(r),
                }
            } else {
                r += 1;
            }
        }
    }

    /// Recompute the tableau as `B^-1 [A | b]` from the initial data for the
    /// current basis. Leaves the tableau alone if `B` looks singular.
    fn reinvert(&mut self) {
        let (m, w) = (self.m, self.width());
        let stride = m + w;
        let mut aug = vec![0.0; m * stride];
        for r in 0..m {
            for (k, &b) in self.basis.iter().enumerate() {
                aug[r * stride + k] = self.orig[r * w + b];
            }
            aug[r * stride + m..(r + 1) * stride].copy_from_slice(&self.orig[r * w..(r + 1) * w]);
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&i, &j| aug[i * stride + c].abs().total_cmp(&aug[j * stride + c].abs()))
                .unwrap_or(c);
            if aug[p * stride + c].abs() < 1e-13 {
                return;
            }
            if p != c {
                for k in 0..stride {
                    aug.swap(p * stride + k, c * stride + k);
                }
            }
            let piv = aug[c * stride + c];
            for k in 0..stride {
                aug[c * stride + k] /= piv;
            }
            for r in 0..m {
                let f = aug[r * stride + c];
                if r != c && f != 0.0 {
                    for k in 0..stride {
                        aug[r * stride + k] -= f * aug[c * stride + k];
                    }
                }
            }
        }
        // row c of the solution belongs to the c-th basic variable
        for r in 0..m {
            self.data[r * w..(r + 1) * w].copy_from_slice(&aug[r * stride + m..(r + 1) * stride]);
            for (k, &b) in self.basis.iter().enumerate() {
                self.data[r * w + b] = if k == r { 1.0 } else { 0.0 };
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width();
        self.orig.drain(r * w..(r + 1) * w);
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.m -= 1;
    }
}
