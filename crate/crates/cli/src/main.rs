use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use udea_cli::{ingest_csv, parse_scale, run, write_outputs, CliError, Format, Mode, RunConfig};
use udea_core::Preset;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Scores, peers and slacks
    Nominal,
    /// Scores at a fixed box half-width (--sigma)
    Robust,
    /// Score trace over the σ grid 0, t, 2t, ... up to ν
    Sweep,
    /// Minimum uncertainty from the enumerated frontier facets
    Exact,
    /// Minimum uncertainty from the σ grid
    Iterative,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    /// Doses in percent of clinical goals; ν = 3.6, t = 0.01
    Radiotherapy,
}

/// Data envelopment analysis under box uncertainty.
#[derive(Debug, Parser)]
#[command(name = "udea", version)]
struct Args {
    mode: ModeArg,
    /// CSV with a DMU name column and in:/out:/env: variable columns
    #[arg(long)]
    data: PathBuf,
    /// Box half-width for robust mode
    #[arg(long)]
    sigma: Option<f64>,
    /// Cap on the uncertainty ("inf" for none) [default: 3.6]
    #[arg(long)]
    nu: Option<f64>,
    /// Grid step [default: 0.01]
    #[arg(long)]
    step: Option<f64>,
    /// Floor for perturbed inputs
    #[arg(long, default_value_t = udea_core::robust::DEFAULT_EPS)]
    eps: f64,
    /// Bisect iterative brackets down to this width
    #[arg(long)]
    refine: Option<f64>,
    /// Multiply a variable by a factor, e.g. in:dose=0.01 (repeatable)
    #[arg(long = "scale", value_parser = parse_scale)]
    scales: Vec<(String, f64)>,
    #[arg(long)]
    preset: Option<PresetArg>,
    /// Report file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plot-data file for exact and iterative modes [default: <out>.plot.csv]
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Print numbers at full precision instead of 6 decimals
    #[arg(long)]
    full_precision: bool,
}

fn config(args: &Args) -> RunConfig {
    let mode = match args.mode {
        ModeArg::Nominal => Mode::Nominal,
        ModeArg::Robust => Mode::Robust,
        ModeArg::Sweep => Mode::Sweep,
        ModeArg::Exact => Mode::Exact,
        ModeArg::Iterative => Mode::Iterative,
    };
    let mut cfg = RunConfig::new(mode);
    if let Some(PresetArg::Radiotherapy) = args.preset {
        let p = Preset::Radiotherapy;
        let u = p.config();
        cfg.preset = Some(p);
        cfg.nu = u.nu;
        cfg.step = u.step;
    }
    cfg.sigma = args.sigma;
    cfg.nu = args.nu.unwrap_or(cfg.nu);
    cfg.step = args.step.unwrap_or(cfg.step);
    cfg.eps = args.eps;
    cfg.refine = args.refine;
    cfg.scales = args.scales.clone();
    cfg.format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    };
    cfg.out = args.out.clone();
    cfg.plot = args.plot.clone();
    cfg.jobs = args.jobs;
    cfg.full_precision = args.full_precision;
    cfg
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = config(&args);
    let result = (|| -> Result<(), CliError> {
        cfg.validate()?;
        let ds = ingest_csv(&args.data)?;
        let out = run(&cfg, &ds)?;
        write_outputs(&cfg, &out)
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("udea: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
