//! Box uncertainty and the robust envelopment score.
//!
//! Under a box of half-width σ every datum may move by at most σ. The most
//! favourable realisation for the evaluated DMU lowers its inputs and raises
//! its outputs while doing the opposite to every other DMU, so the robust
//! score is the nominal score of that single transformed dataset.

use crate::dataset::{DeaDataset, VariableRole};
use crate::dea::{self, EfficiencyResult};
use crate::error::{DeaError, Result};

/// Default lower bound for transformed inputs.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default cap on the admissible uncertainty, in scaled percent units.
pub const DEFAULT_NU: f64 = 3.6;
/// Default grid step for the iterative solver.
pub const DEFAULT_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyConfig {
    /// Current half-width σ.
    pub sigma: f64,
    /// Cap ν on σ; `f64::INFINITY` when unrestricted.
    pub nu: f64,
    /// Grid step `t` of the iterative solver.
    pub step: f64,
    /// Floor ε for transformed inputs.
    pub eps: f64,
    /// When set, bisect the final grid bracket down to this width.
    pub refine: Option<f64>,
}

impl Default for UncertaintyConfig {
    fn default() -> Self {
        UncertaintyConfig {
            sigma: 0.0,
            nu: DEFAULT_NU,
            step: DEFAULT_STEP,
            eps: DEFAULT_EPS,
            refine: None,
        }
    }
}

impl UncertaintyConfig {
    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_nu(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(DeaError::InvalidConfig(msg));
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return bad(format!("sigma must be finite and non-negative, got {}", self.sigma));
        }
        if self.nu.is_nan() || self.nu < 0.0 {
            return bad(format!("nu must be non-negative, got {}", self.nu));
        }
        if self.sigma > self.nu {
            return bad(format!("sigma {} exceeds the cap nu {}", self.sigma, self.nu));
        }
        if !(self.step.is_finite() && self.step > 0.0) {
            return bad(format!("step must be positive, got {}", self.step));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return bad(format!("eps must be non-negative, got {}", self.eps));
        }
        if let Some(tol) = self.refine {
            if !(tol.is_finite() && tol > 0.0) {
                return bad(format!("refinement tolerance must be positive, got {tol}"));
            }
        }
        Ok(())
    }

    /// Whether `other` is harboured by `self`, i.e. its box is no larger.
    pub fn harbours(&self, other: &UncertaintyConfig) -> bool {
        other.sigma <= self.sigma
    }
}

/// Worst-case-favourable realisation of the box of half-width `sigma` for `dmu`.
///
/// The evaluated DMU gets inputs `x - σ` and outputs `y + σ`; every other DMU
/// gets `x + σ` and `y - σ`. Inputs never drop below `min(x, eps)` and outputs
/// never below 0. Environmental outputs are left alone.
pub fn transform_box(ds: &DeaDataset, dmu: usize, sigma: f64, eps: f64) -> Result<DeaDataset> {
    ds.check_index(dmu)?;
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(DeaError::InvalidConfig(format!(
            "sigma must be non-negative, got {sigma}"
        )));
    }
    let inputs = (0..ds.num_inputs())
        .map(|n| {
            ds.input_row(n)
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    if i == dmu {
                        (x - sigma).max(x.min(eps))
                    } else {
                        x + sigma
                    }
                })
                .collect()
        })
        .collect();
    let outputs = (0..ds.num_outputs())
        .map(|m| {
            let row = ds.output_row(m);
            if ds.output_roles()[m] == VariableRole::Environmental {
                return row.to_vec();
            }
            row.iter()
                .enumerate()
                .map(|(i, &y)| if i == dmu { y + sigma } else { (y - sigma).max(0.0) })
                .collect()
        })
        .collect();
    Ok(ds.with_values(inputs, outputs))
}

pub fn robust_efficiency(ds: &DeaDataset, dmu: usize, sigma: f64) -> Result<EfficiencyResult> {
    robust_efficiency_with(ds, dmu, sigma, DEFAULT_EPS)
}

pub fn robust_efficiency_with(ds: &DeaDataset, dmu: usize, sigma: f64, eps: f64) -> Result<EfficiencyResult> {
    let virtual_ds = transform_box(ds, dmu, sigma, eps)?;
    dea::solve_nominal(&virtual_ds, dmu)
}

/// Upper bound on the score increase that a box of half-width `sigma` can buy:
/// `max_{q ∈ binding} (max_{i≠k} X_qi - min_{i≠k} X_qi + 2σ) / X_qk`.
pub fn efficiency_gain_upper_bound(ds: &DeaDataset, dmu: usize, sigma: f64, binding: &[usize]) -> Result<f64> {
    ds.check_index(dmu)?;
    if binding.is_empty() {
        return Err(DeaError::EmptyBindingSet);
    }
    let mut best = f64::NEG_INFINITY;
    for &q in binding {
        if q >= ds.num_inputs() {
            return Err(DeaError::UnknownVariable(format!("input #{q}")));
        }
        let own = ds.input(q, dmu);
        if own <= 0.0 {
            return Err(DeaError::NonPositiveInput { input: q });
        }
        let others = ds
            .input_row(q)
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != dmu)
            .map(|(_, &v)| v);
        let (lo, hi) = others.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let range = if lo.is_finite() { hi - lo } else { 0.0 };
        best = best.max((range + 2.0 * sigma) / own);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frontier6() -> DeaDataset {
        DeaDataset::builder(["A", "B", "C", "D", "E", "F"])
            .input("x", [1.0, 3.0, 7.0, 10.0, 8.0, 6.0])
            .output("y", [1.0, 4.0, 7.0, 8.0, 5.0, 2.0])
            .build()
            .unwrap()
    }

    #[test]
    fn transform_moves_in_opposite_directions() {
        let ds = frontier6();
        let t = transform_box(&ds, 4, 0.25, DEFAULT_EPS).unwrap();
        assert_eq!(t.point(0), vec![1.25, 0.75]);
        assert_eq!(t.point(4), vec![7.75, 5.25]);
        assert_eq!(t.point(5), vec![6.25, 1.75]);
    }

    #[test]
    fn zero_box_is_identity() {
        let ds = frontier6();
        assert_eq!(transform_box(&ds, 4, 0.0, DEFAULT_EPS).unwrap(), ds);
    }

    #[test]
    fn clamping() {
        let ds = frontier6();
        let t = transform_box(&ds, 4, 2.0, DEFAULT_EPS).unwrap();
        assert_eq!(t.point(0), vec![3.0, 0.0]);
        let t = transform_box(&ds, 0, 5.0, 0.5).unwrap();
        assert_eq!(t.input(0, 0), 0.5);
    }

    #[test]
    fn environmental_outputs_untouched() {
        let ds = DeaDataset::builder(["a", "b"])
            .input("x", [2.0, 3.0])
            .output("y", [4.0, 5.0])
            .environmental("overlap", [10.0, 20.0])
            .build()
            .unwrap();
        let t = transform_box(&ds, 0, 1.0, DEFAULT_EPS).unwrap();
        assert_eq!(t.output_row(1), &[10.0, 20.0]);
        assert_eq!(t.output_row(0), &[5.0, 4.0]);
    }

    #[test]
    fn robust_scores() {
        let ds = frontier6();
        assert!((robust_efficiency(&ds, 4, 0.0).unwrap().score - 13.0 / 24.0).abs() < 1e-9);
        // segment B^u C^u: slope 3/4 through (3.5, 3.5); input 37/6 at output 5.5
        let expected = (37.0 / 6.0) / 7.5;
        assert!((robust_efficiency(&ds, 4, 0.5).unwrap().score - expected).abs() < 1e-9);
        assert!((robust_efficiency(&ds, 4, 0.79).unwrap().score - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gain_bound() {
        let ds = frontier6();
        assert!((efficiency_gain_upper_bound(&ds, 4, 0.5, &[0]).unwrap() - 1.25).abs() < 1e-12);
        assert!((efficiency_gain_upper_bound(&ds, 4, 0.0, &[0]).unwrap() - 9.0 / 8.0).abs() < 1e-12);
        assert!(matches!(
            efficiency_gain_upper_bound(&ds, 4, 0.0, &[]),
            Err(DeaError::EmptyBindingSet)
        ));
        let flat = DeaDataset::builder(["a", "b", "c"])
            .input("x", [4.0, 4.0, 4.0])
            .output("y", [1.0, 2.0, 3.0])
            .build()
            .unwrap();
        assert!((efficiency_gain_upper_bound(&flat, 1, 0.3, &[0]).unwrap() - 0.15).abs() < 1e-12);
    }

    #[test]
    fn gain_bound_division_guard() {
        let ds = DeaDataset::builder(["a", "b"])
            .input("x", [0.0, 1.0])
            .input("z", [1.0, 1.0])
            .output("y", [1.0, 1.0])
            .build()
            .unwrap();
        assert!(matches!(
            efficiency_gain_upper_bound(&ds, 0, 0.1, &[0]),
            Err(DeaError::NonPositiveInput { input: 0 })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(UncertaintyConfig::default().validate().is_ok());
        assert!(UncertaintyConfig::default().with_step(0.0).validate().is_err());
        assert!(UncertaintyConfig::default().with_sigma(5.0).validate().is_err());
        assert!(UncertaintyConfig::default()
            .with_nu(f64::INFINITY)
            .with_sigma(5.0)
            .validate()
            .is_ok());
        assert!(UncertaintyConfig::default().with_eps(-1.0).validate().is_err());
        let small = UncertaintyConfig::default().with_sigma(0.1);
        assert!(UncertaintyConfig::default().with_sigma(0.2).harbours(&small));
    }
}
