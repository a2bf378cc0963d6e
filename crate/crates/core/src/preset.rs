//! Named scaling recipes.

use crate::dataset::{DeaDataset, VariableRole};
use crate::error::{DeaError, Result};
use crate::robust::UncertaintyConfig;

/// Prescribed target dose, Gy.
pub const PRESCRIBED_DOSE: f64 = 74.0;
/// Fraction of the prescription the target coverage metric is expected to reach.
pub const COVERAGE_FRACTION: f64 = 0.95;
/// Organ-at-risk dose constraint, Gy.
pub const OAR_LIMIT: f64 = 70.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Dose-volume plan comparison in percent of clinical goals: inputs
    /// (organ-at-risk doses) are divided by 70 Gy, discretionary outputs
    /// (target coverage) by 0.95 · 74 Gy, and environmental outputs are kept.
    Radiotherapy,
}

impl Preset {
    pub fn from_name(name: &str) -> Result<Preset> {
        match name {
            "radiotherapy" => Ok(Preset::Radiotherapy),
            other => Err(DeaError::InvalidConfig(format!("unknown preset '{other}'"))),
        }
    }

    /// One factor per variable, inputs first, as taken by [`DeaDataset::scaled`].
    pub fn factors(&self, ds: &DeaDataset) -> Vec<f64> {
        match self {
            Preset::Radiotherapy => {
                let input = 100.0 / OAR_LIMIT;
                let output = 100.0 / (PRESCRIBED_DOSE * COVERAGE_FRACTION);
                let outs = ds.output_roles().iter().map(|r| match r {
                    VariableRole::Discretionary => output,
                    VariableRole::Environmental => 1.0,
                });
                std::iter::repeat_n(input, ds.num_inputs()).chain(outs).collect()
            }
        }
    }

    pub fn apply(&self, ds: &DeaDataset) -> Result<DeaDataset> {
        ds.scaled(&self.factors(ds))
    }

    /// Uncertainty settings that go with the recipe: ν = 3.6, t = 0.01.
    pub fn config(&self) -> UncertaintyConfig {
        match self {
            Preset::Radiotherapy => UncertaintyConfig::default().with_nu(3.6).with_step(0.01),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radiotherapy_scaling() {
        let ds = DeaDataset::builder(["p1", "p2"])
            .input("geud", [63.0, 70.0])
            .output("d95", [70.3, 66.785])
            .environmental("overlap", [12.0, 3.0])
            .build()
            .unwrap();
        let scaled = Preset::Radiotherapy.apply(&ds).unwrap();
        assert!((scaled.input(0, 0) - 90.0).abs() < 1e-9);
        assert!((scaled.input(0, 1) - 100.0).abs() < 1e-9);
        assert!((scaled.output(0, 0) - 100.0).abs() < 1e-9);
        assert!((scaled.output(0, 1) - 95.0).abs() < 1e-9);
        assert_eq!(scaled.output_row(1), &[12.0, 3.0]);
        let cfg = Preset::Radiotherapy.config();
        assert_eq!((cfg.nu, cfg.step), (3.6, 0.01));
        assert!(Preset::from_name("dental").is_err());
    }
}
