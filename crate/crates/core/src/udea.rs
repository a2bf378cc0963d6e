//! Minimum uncertainty for efficiency: the iterative grid solver and
//! capability classification.

use crate::dataset::DeaDataset;
use crate::dea::SCORE_TOL;
use crate::error::Result;
use crate::robust::{robust_efficiency_with, UncertaintyConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Capability {
    Capable,
    Incapable,
}

impl Capability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Capability::Capable => "capable",
            Capability::Incapable => "incapable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    /// Minimum over enumerated facets.
    Exact,
    /// Facet minimum corrected by bisection because clamping was active.
    ExactClampRefined,
    /// First grid point reaching efficiency.
    Iterative,
    /// Grid bracket tightened by bisection.
    IterativeBisected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UdeaOutcome {
    pub dmu: usize,
    /// Minimum uncertainty υ*; `None` when efficiency is out of reach under the cap.
    pub upsilon: Option<f64>,
    /// Score γ* at the final σ.
    pub gamma: f64,
    pub capability: Capability,
    /// Index of the attaining facet (exact path only).
    pub facet: Option<usize>,
    /// υ* is only a threshold: efficiency needs σ strictly above it.
    pub strict: bool,
    /// `(σ, score)` at every evaluation, in increasing σ.
    pub trace: Vec<(f64, f64)>,
    /// `(lo, hi]` with the score below 1 at `lo` and efficient at `hi` (iterative path).
    pub bracket: Option<(f64, f64)>,
    pub method: SolveMethod,
}

impl UdeaOutcome {
    pub fn is_capable(&self) -> bool {
        self.capability == Capability::Capable
    }
}

/// Stricter threshold used while bisecting, where the LP error rather than
/// the reporting tolerance should limit precision.
const BISECT_TOL: f64 = 1e-10;

pub(crate) fn reaches_efficiency(score: f64) -> bool {
    score >= 1.0 - SCORE_TOL
}

/// Capability under `cfg.nu`, re-derived from the outcome's υ* and score.
pub fn classify_capability(outcome: &UdeaOutcome, cfg: &UncertaintyConfig) -> Capability {
    match outcome.upsilon {
        Some(u) if within_cap(u, outcome.strict, cfg.nu) && (outcome.strict || reaches_efficiency(outcome.gamma)) => {
            Capability::Capable
        }
        _ => Capability::Incapable,
    }
}

pub(crate) fn within_cap(upsilon: f64, strict: bool, nu: f64) -> bool {
    if strict {
        upsilon < nu
    } else {
        upsilon <= nu
    }
}

/// Largest σ the loop ever evaluates. For an unbounded cap every DMU is
/// efficient once all its inputs hit the floor, which happens by
/// `max_n x_n`; one extra step keeps that point on the grid.
fn loop_cap(ds: &DeaDataset, dmu: usize, cfg: &UncertaintyConfig) -> f64 {
    if cfg.nu.is_finite() {
        cfg.nu
    } else {
        let top = ds.inputs_of(dmu).into_iter().fold(cfg.eps, f64::max);
        top + cfg.step
    }
}

/// Grid search over `σ_k = k t` for `k t < ν`, followed by one evaluation at `ν`.
///
/// υ* is the first evaluated σ whose robust score reaches 1, so the true
/// minimum lies in `(σ - t, σ]`.
pub fn iterative_udea(ds: &DeaDataset, dmu: usize, cfg: &UncertaintyConfig) -> Result<UdeaOutcome> {
    cfg.validate()?;
    ds.check_index(dmu)?;
    let cap = loop_cap(ds, dmu, cfg);
    let slack = 1e-12 * cap.max(1.0);
    let score_at = |sigma: f64| robust_efficiency_with(ds, dmu, sigma, cfg.eps).map(|r| r.score);

    let mut trace = Vec::new();
    let mut k: u64 = 0;
    loop {
        let mut sigma = k as f64 * cfg.step;
        let last = sigma >= cap - slack;
        if last {
            sigma = cap;
        }
        let score = score_at(sigma)?;
        trace.push((sigma, score));
        if reaches_efficiency(score) {
            let prev = if k == 0 { None } else { Some(trace[trace.len() - 2].0) };
            let mut outcome = UdeaOutcome {
                dmu,
                upsilon: Some(sigma),
                gamma: score,
                capability: Capability::Capable,
                facet: None,
                strict: false,
                trace,
                bracket: prev.map(|lo| (lo, sigma)),
                method: SolveMethod::Iterative,
            };
            if let (Some(tol), Some(lo)) = (cfg.refine, prev) {
                let (lo, hi, gamma) = bisect(lo, sigma, score, tol, score_at)?;
                outcome.upsilon = Some(hi);
                outcome.gamma = gamma;
                outcome.bracket = Some((lo, hi));
                outcome.method = SolveMethod::IterativeBisected;
            }
            return Ok(outcome);
        }
        if last {
            return Ok(UdeaOutcome {
                dmu,
                upsilon: None,
                gamma: score,
                capability: Capability::Incapable,
                facet: None,
                strict: false,
                trace,
                bracket: None,
                method: SolveMethod::Iterative,
            });
        }
        k += 1;
    }
}

/// Shrink `(lo, hi]` to width `tol`, keeping the score below 1 at `lo` and at 1 at `hi`.
pub(crate) fn bisect(
    mut lo: f64,
    mut hi: f64,
    mut hi_score: f64,
    tol: f64,
    score_at: impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64, f64)> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = score_at(mid)?;
        if s >= 1.0 - BISECT_TOL {
            hi = mid;
            hi_score = s;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi, hi_score))
}

/// [`iterative_udea`] for every DMU, in dataset order.
pub fn udea_sweep(ds: &DeaDataset, cfg: &UncertaintyConfig) -> Result<Vec<UdeaOutcome>> {
    (0..ds.len()).map(|i| iterative_udea(ds, i, cfg)).collect()
}
