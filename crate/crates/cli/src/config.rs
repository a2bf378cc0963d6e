use std::path::PathBuf;

use udea_core::robust::{DEFAULT_EPS, DEFAULT_NU, DEFAULT_STEP};
use udea_core::{DeaDataset, Preset, UncertaintyConfig};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Scores, peers and slacks.
    Nominal,
    /// Scores at a fixed σ.
    Robust,
    /// Score at every σ on the grid.
    Sweep,
    /// υ* from the enumerated facets.
    Exact,
    /// υ* from the grid search.
    Iterative,
}

impl Mode {
    /// Modes that produce a plot-data file.
    pub fn has_plot(&self) -> bool {
        matches!(self, Mode::Exact | Mode::Iterative)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Fixed half-width for robust mode.
    pub sigma: Option<f64>,
    pub nu: f64,
    pub step: f64,
    pub eps: f64,
    /// Bisect iterative brackets down to this width.
    pub refine: Option<f64>,
    pub preset: Option<Preset>,
    /// Extra `(variable, factor)` pairs applied after the preset.
    pub scales: Vec<(String, f64)>,
    pub format: Format,
    /// Report destination; stdout when absent.
    pub out: Option<PathBuf>,
    /// Plot-data destination; derived from `out` when absent.
    pub plot: Option<PathBuf>,
    /// Worker threads; 0 picks one per core.
    pub jobs: usize,
    /// Print shortest round-trip numbers instead of 6 decimals.
    pub full_precision: bool,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        RunConfig {
            mode,
            sigma: None,
            nu: DEFAULT_NU,
            step: DEFAULT_STEP,
            eps: DEFAULT_EPS,
            refine: None,
            preset: None,
            scales: Vec::new(),
            format: Format::Csv,
            out: None,
            plot: None,
            jobs: 0,
            full_precision: false,
        }
    }

    pub fn uncertainty(&self) -> UncertaintyConfig {
        UncertaintyConfig {
            sigma: self.sigma.unwrap_or(0.0),
            nu: self.nu,
            step: self.step,
            eps: self.eps,
            refine: self.refine,
        }
    }

    /// Where the plot file goes: `--plot`, else `<out>` with `.plot.csv`.
    pub fn plot_path(&self) -> Option<PathBuf> {
        if !self.mode.has_plot() {
            return None;
        }
        self.plot.clone().or_else(|| {
            self.out.as_ref().map(|o| {
                let stem = o
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                o.with_file_name(format!("{stem}.plot.csv"))
            })
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        match (self.mode, self.sigma) {
            (Mode::Robust, None) => return bad("robust mode needs --sigma".into()),
            (Mode::Robust, Some(_)) => {}
            (_, Some(_)) => return bad("--sigma only applies to robust mode".into()),
            _ => {}
        }
        if self.plot.is_some() && !self.mode.has_plot() {
            return bad("--plot only applies to exact and iterative modes".into());
        }
        if self.mode == Mode::Sweep && !self.nu.is_finite() {
            return bad("sweep mode needs a finite --nu".into());
        }
        if self.jobs > 1024 {
            return bad(format!("--jobs {} is unreasonably large", self.jobs));
        }
        self.uncertainty()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        for path in self.out.iter().chain(self.plot_path().iter()) {
            let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
            if let Some(dir) = parent {
                if !dir.is_dir() {
                    return bad(format!("directory {} does not exist", dir.display()));
                }
            }
            if path.is_dir() {
                return bad(format!("{} is a directory", path.display()));
            }
            if path.exists() && path.metadata().is_ok_and(|m| m.permissions().readonly()) {
                return bad(format!("{} is read-only", path.display()));
            }
        }
        Ok(())
    }

    /// Apply the preset scaling, then every `--scale` factor.
    pub fn prepare(&self, ds: &DeaDataset) -> Result<DeaDataset, CliError> {
        let mut factors = match self.preset {
            Some(p) => p.factors(ds),
            None => vec![1.0; ds.num_inputs() + ds.num_outputs()],
        };
        for (var, f) in &self.scales {
            let k = ds.variable_index(var)?;
            factors[k] *= f;
        }
        Ok(ds.scaled(&factors)?)
    }
}

/// Parse `name=factor`.
pub fn parse_scale(arg: &str) -> Result<(String, f64), String> {
    let (name, factor) = arg
        .split_once('=')
        .ok_or_else(|| format!("expected var=factor, got '{arg}'"))?;
    let f: f64 = factor.trim().parse().map_err(|_| format!("bad factor '{factor}'"))?;
    if !(f.is_finite() && f > 0.0) {
        return Err(format!("factor for '{name}' must be positive, got {f}"));
    }
    Ok((name.trim().to_string(), f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_fields() {
        assert!(RunConfig::new(Mode::Robust).validate().is_err());
        let mut c = RunConfig::new(Mode::Robust);
        c.sigma = Some(0.5);
        assert!(c.validate().is_ok());
        let mut c = RunConfig::new(Mode::Nominal);
        c.sigma = Some(0.5);
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Mode::Sweep);
        c.nu = f64::INFINITY;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Mode::Nominal);
        c.plot = Some("p.csv".into());
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Mode::Exact);
        c.out = Some("/nonexistent-dir/r.csv".into());
        assert!(c.validate().is_err());
    }

    #[test]
    fn plot_path_follows_out() {
        let mut c = RunConfig::new(Mode::Iterative);
        assert_eq!(c.plot_path(), None);
        c.out = Some("runs/report.csv".into());
        assert_eq!(c.plot_path(), Some(PathBuf::from("runs/report.plot.csv")));
        c.mode = Mode::Nominal;
        assert_eq!(c.plot_path(), None);
    }

    #[test]
    fn scale_arguments() {
        assert_eq!(parse_scale("in:x=2.5").unwrap(), ("in:x".to_string(), 2.5));
        assert!(parse_scale("x").is_err());
        assert!(parse_scale("x=-1").is_err());
        assert!(parse_scale("x=abc").is_err());
    }
}
