//! Mode dispatch. Per-DMU work runs on a bounded pool; tables are assembled
//! in dataset order.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use udea_core::{
    enumerate_efficient_facets, exact_udea_on, iterative_udea, robust_efficiency_with, solve_nominal, DeaDataset,
    Result as CoreResult, SolveMethod, UdeaOutcome,
};

use crate::config::{Format, Mode, RunConfig};
use crate::error::CliError;
use crate::report::{Cell, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: Table,
    /// `dmu,nominal_score,upsilon_star,capable` for exact and iterative modes.
    pub plot: Option<Table>,
}

/// `k t` for every `k t < ν`, then `ν` itself.
pub fn sigma_grid(nu: f64, step: f64) -> Vec<f64> {
    let slack = 1e-12 * nu.max(1.0);
    let mut out = Vec::new();
    let mut k: u64 = 0;
    loop {
        let s = k as f64 * step;
        if s >= nu - slack {
            out.push(nu);
            return out;
        }
        out.push(s);
        k += 1;
    }
}

fn per_dmu<T: Send>(
    cfg: &RunConfig,
    count: usize,
    f: impl Fn(usize) -> CoreResult<T> + Sync + Send,
) -> Result<Vec<T>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(f).collect::<CoreResult<Vec<T>>>())?)
}

fn name(ds: &DeaDataset, i: usize) -> Cell {
    Cell::Text(ds.name(i).to_string())
}

fn opt(v: Option<f64>) -> Cell {
    v.map_or(Cell::Empty, Cell::Num)
}

fn method_name(m: SolveMethod) -> &'static str {
    match m {
        SolveMethod::Exact => "exact",
        SolveMethod::ExactClampRefined => "exact-clamp-refined",
        SolveMethod::Iterative => "grid",
        SolveMethod::IterativeBisected => "grid-bisected",
    }
}

/// Validate `cfg`, apply scaling and evaluate every DMU of `ds`.
pub fn run(cfg: &RunConfig, ds: &DeaDataset) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    let ds = cfg.prepare(ds)?;
    let ucfg = cfg.uncertainty();
    let n = ds.len();
    match cfg.mode {
        Mode::Nominal => {
            let res = per_dmu(cfg, n, |i| solve_nominal(&ds, i))?;
            let mut cols = vec![
                "dmu".to_string(),
                "score".into(),
                "efficient".into(),
                "peers".into(),
                "lambdas".into(),
            ];
            cols.extend(ds.input_names().iter().map(|v| format!("slack_in:{v}")));
            cols.extend(ds.output_names().iter().map(|v| format!("slack_out:{v}")));
            let mut t = Table::new(cols);
            for r in &res {
                let peers: Vec<&str> = r.peers.iter().map(|&p| ds.name(p)).collect();
                let lambdas: Vec<String> = r
                    .peers
                    .iter()
                    .map(|&p| {
                        if cfg.full_precision {
                            r.lambda[p].to_string()
                        } else {
                            format!("{:.6}", r.lambda[p])
                        }
                    })
                    .collect();
                let mut row = vec![
                    name(&ds, r.dmu),
                    Cell::Num(r.score),
                    Cell::Bool(r.is_efficient()),
                    Cell::Text(peers.join(";")),
                    Cell::Text(lambdas.join(";")),
                ];
                row.extend(r.input_slacks.iter().chain(&r.output_slacks).map(|&s| Cell::Num(s)));
                t.push(row);
            }
            Ok(RunOutput { report: t, plot: None })
        }
        Mode::Robust => {
            let sigma = ucfg.sigma;
            let res = per_dmu(cfg, n, |i| {
                let nominal = solve_nominal(&ds, i)?.score;
                let r = robust_efficiency_with(&ds, i, sigma, ucfg.eps)?;
                Ok((nominal, r))
            })?;
            let mut t = Table::new(["dmu", "sigma", "nominal_score", "score", "efficient"]);
            for (i, (nominal, r)) in res.iter().enumerate() {
                t.push(vec![
                    name(&ds, i),
                    Cell::Num(sigma),
                    Cell::Num(*nominal),
                    Cell::Num(r.score),
                    Cell::Bool(r.is_efficient()),
                ]);
            }
            Ok(RunOutput { report: t, plot: None })
        }
        Mode::Sweep => {
            let grid = sigma_grid(ucfg.nu, ucfg.step);
            let res = per_dmu(cfg, n, |i| {
                grid.iter()
                    .map(|&s| robust_efficiency_with(&ds, i, s, ucfg.eps).map(|r| r.score))
                    .collect::<CoreResult<Vec<f64>>>()
            })?;
            let mut t = Table::new(["dmu", "sigma", "score"]);
            for (i, scores) in res.iter().enumerate() {
                for (&s, &score) in grid.iter().zip(scores) {
                    t.push(vec![name(&ds, i), Cell::Num(s), Cell::Num(score)]);
                }
            }
            Ok(RunOutput { report: t, plot: None })
        }
        Mode::Exact => {
            let facets = enumerate_efficient_facets(&ds)?;
            let res = per_dmu(cfg, n, |i| exact_udea_on(&ds, &facets, i, &ucfg))?;
            let mut t = Table::new([
                "dmu",
                "nominal_score",
                "upsilon_star",
                "strict",
                "facet_id",
                "facet",
                "method",
                "gamma",
                "capability",
            ]);
            for o in &res {
                let (id, label) = match o.facet {
                    Some(k) if o.method == SolveMethod::Exact => {
                        (Cell::Int(k as u64), Cell::Text(facets.label(&ds, k)))
                    }
                    _ => (Cell::Empty, Cell::Empty),
                };
                t.push(vec![
                    name(&ds, o.dmu),
                    Cell::Num(o.trace[0].1),
                    opt(o.upsilon),
                    Cell::Bool(o.strict),
                    id,
                    label,
                    Cell::Text(method_name(o.method).into()),
                    Cell::Num(o.gamma),
                    Cell::Text(o.capability.as_str().into()),
                ]);
            }
            Ok(RunOutput {
                plot: Some(plot_table(&ds, &res)),
                report: t,
            })
        }
        Mode::Iterative => {
            let res = per_dmu(cfg, n, |i| iterative_udea(&ds, i, &ucfg))?;
            let mut t = Table::new([
                "dmu",
                "nominal_score",
                "upsilon_star",
                "bracket_lo",
                "bracket_hi",
                "method",
                "evaluations",
                "gamma",
                "capability",
            ]);
            for o in &res {
                let (lo, hi) = match (o.bracket, o.upsilon) {
                    (Some((lo, hi)), _) => (Cell::Num(lo), Cell::Num(hi)),
                    (None, Some(u)) => (Cell::Num(u), Cell::Num(u)),
                    (None, None) => (Cell::Empty, Cell::Empty),
                };
                t.push(vec![
                    name(&ds, o.dmu),
                    Cell::Num(o.trace[0].1),
                    opt(o.upsilon),
                    lo,
                    hi,
                    Cell::Text(method_name(o.method).into()),
                    Cell::Int(o.trace.len() as u64),
                    Cell::Num(o.gamma),
                    Cell::Text(o.capability.as_str().into()),
                ]);
            }
            Ok(RunOutput {
                plot: Some(plot_table(&ds, &res)),
                report: t,
            })
        }
    }
}

fn plot_table(ds: &DeaDataset, res: &[UdeaOutcome]) -> Table {
    let mut t = Table::new(["dmu", "nominal_score", "upsilon_star", "capable"]);
    for o in res {
        t.push(vec![
            name(ds, o.dmu),
            Cell::Num(o.trace[0].1),
            opt(o.upsilon),
            Cell::Bool(o.is_capable()),
        ]);
    }
    t
}

fn write_file(path: &Path, table: &Table, format: Format, full: bool) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(err)?);
    table.write(&mut w, format, full).map_err(err)?;
    w.flush().map_err(err)
}

/// Write the report to `cfg.out` (stdout when unset) and the plot data to
/// [`RunConfig::plot_path`]. The plot file is always CSV.
pub fn write_outputs(cfg: &RunConfig, out: &RunOutput) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => write_file(path, &out.report, cfg.format, cfg.full_precision)?,
        None => {
            let stdout = std::io::stdout();
            out.report
                .write(stdout.lock(), cfg.format, cfg.full_precision)
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    if let (Some(plot), Some(path)) = (&out.plot, cfg.plot_path()) {
        write_file(&path, plot, Format::Csv, cfg.full_precision)?;
    }
    Ok(())
}
