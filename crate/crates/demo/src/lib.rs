//! WebAssembly entry points for the static demo page in `www/`.
//!
//! Every export takes the dataset as JSON and returns JSON; errors become
//! JavaScript exceptions. The same operations are available as plain Rust
//! functions for native testing.

use serde::{Deserialize, Serialize};
use udea_core::{
    enumerate_efficient_facets, exact_udea_on, extreme_dmus, iterative_udea, solve_nominal, transform_box, DeaDataset,
    SolveMethod, UncertaintyConfig,
};
use wasm_bindgen::prelude::*;

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    In,
    Out,
    Env,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Variable {
    pub name: String,
    pub kind: Kind,
    pub values: Vec<f64>,
}

/// `{"dmus": [...], "variables": [{"name", "kind": "in"|"out"|"env", "values"}]}`
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct DatasetInput {
    pub dmus: Vec<String>,
    pub variables: Vec<Variable>,
}

impl DatasetInput {
    pub fn build(&self) -> Result<DeaDataset, String> {
        let mut b = DeaDataset::builder(self.dmus.clone());
        for v in &self.variables {
            b = match v.kind {
                Kind::In => b.input(v.name.clone(), v.values.clone()),
                Kind::Out => b.output(v.name.clone(), v.values.clone()),
                Kind::Env => b.environmental(v.name.clone(), v.values.clone()),
            };
        }
        b.build().map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotPoint {
    pub name: String,
    pub x: f64,
    pub y: f64,
}

/// One-input, one-output picture of the box-transformed data for one DMU.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontierView {
    pub sigma: f64,
    pub score: f64,
    pub efficient: bool,
    /// Nominal data.
    pub nominal: Vec<PlotPoint>,
    /// Transformed data; the evaluated DMU moved left and up, the rest right and down.
    pub shifted: Vec<PlotPoint>,
    /// Frontier vertices of the transformed data from the vertical ray's
    /// foot to the start of the horizontal ray.
    pub frontier: Vec<(f64, f64)>,
    /// Radial projection of the evaluated DMU, `(θ x, y)`.
    pub target: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyRow {
    pub dmu: String,
    pub nominal_score: f64,
    pub upsilon: Option<f64>,
    pub strict: bool,
    pub capable: bool,
    pub method: &'static str,
    pub facet: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub sigma: f64,
    pub score: f64,
}

fn parse(json: &str) -> Result<DeaDataset, String> {
    let input: DatasetInput = serde_json::from_str(json).map_err(|e| format!("bad dataset JSON: {e}"))?;
    input.build()
}

fn check_dmu(ds: &DeaDataset, dmu: usize) -> Result<(), String> {
    ds.check_index(dmu).map_err(|e| e.to_string())
}

fn points(ds: &DeaDataset) -> Vec<PlotPoint> {
    (0..ds.len())
        .map(|i| PlotPoint {
            name: ds.name(i).to_string(),
            x: ds.input(0, i),
            y: ds.output(0, i),
        })
        .collect()
}

pub fn frontier_view(ds: &DeaDataset, dmu: usize, sigma: f64) -> Result<FrontierView, String> {
    check_dmu(ds, dmu)?;
    if ds.num_inputs() != 1 || ds.num_outputs() != 1 {
        return Err("the frontier view needs exactly one input and one output".into());
    }
    let cfg = UncertaintyConfig::default();
    let shifted = transform_box(ds, dmu, sigma, cfg.eps).map_err(|e| e.to_string())?;
    let res = solve_nominal(&shifted, dmu).map_err(|e| e.to_string())?;
    let mut ext: Vec<(f64, f64)> = extreme_dmus(&shifted)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|i| (shifted.input(0, i), shifted.output(0, i)))
        .collect();
    ext.sort_by(|a, b| a.0.total_cmp(&b.0));
    ext.dedup();
    let mut frontier = Vec::with_capacity(ext.len() + 1);
    if let Some(&(x0, _)) = ext.first() {
        frontier.push((x0, 0.0));
    }
    frontier.extend(ext);
    Ok(FrontierView {
        sigma,
        score: res.score,
        efficient: res.is_efficient(),
        nominal: points(ds),
        target: (res.score * shifted.input(0, dmu), shifted.output(0, dmu)),
        shifted: points(&shifted),
        frontier,
    })
}

/// υ* for every DMU: exact when facet enumeration is within limits, the grid otherwise.
pub fn uncertainty_table(ds: &DeaDataset, nu: f64, step: f64) -> Result<Vec<UncertaintyRow>, String> {
    let cfg = UncertaintyConfig::default().with_nu(nu).with_step(step);
    cfg.validate().map_err(|e| e.to_string())?;
    let facets = enumerate_efficient_facets(ds).ok();
    (0..ds.len())
        .map(|i| {
            let out = match &facets {
                Some(f) => exact_udea_on(ds, f, i, &cfg),
                None => iterative_udea(ds, i, &cfg),
            }
            .map_err(|e| e.to_string())?;
            let method = match out.method {
                SolveMethod::Exact => "exact",
                SolveMethod::ExactClampRefined => "exact (clamp refined)",
                SolveMethod::Iterative => "grid",
                SolveMethod::IterativeBisected => "grid (bisected)",
            };
            let facet = match (&facets, out.facet, out.method) {
                (Some(f), Some(k), SolveMethod::Exact) => Some(f.label(ds, k)),
                _ => None,
            };
            Ok(UncertaintyRow {
                dmu: ds.name(i).to_string(),
                nominal_score: out.trace[0].1,
                upsilon: out.upsilon,
                strict: out.strict,
                capable: out.is_capable(),
                method,
                facet,
            })
        })
        .collect()
}

/// Robust score on the grid `0, t, 2t, ...` up to `ν`, without stopping at efficiency.
pub fn sigma_trace(ds: &DeaDataset, dmu: usize, nu: f64, step: f64) -> Result<Vec<TracePoint>, String> {
    check_dmu(ds, dmu)?;
    let cfg = UncertaintyConfig::default().with_nu(nu).with_step(step);
    cfg.validate().map_err(|e| e.to_string())?;
    if !nu.is_finite() {
        return Err("the trace needs a finite cap".into());
    }
    let count = (nu / step).ceil() as usize;
    if count > 20_000 {
        return Err(format!("{count} grid points; raise the step"));
    }
    let mut out = Vec::with_capacity(count + 1);
    for k in 0..=count {
        let sigma = (k as f64 * step).min(nu);
        let score = udea_core::robust_efficiency_with(ds, dmu, sigma, cfg.eps)
            .map_err(|e| e.to_string())?
            .score;
        out.push(TracePoint { sigma, score });
    }
    Ok(out)
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = frontierView)]
pub fn frontier_view_js(dataset: &str, dmu: usize, sigma: f64) -> Result<String, JsError> {
    to_js(parse(dataset).and_then(|ds| frontier_view(&ds, dmu, sigma)))
}

#[wasm_bindgen(js_name = uncertaintyTable)]
pub fn uncertainty_table_js(dataset: &str, nu: f64, step: f64) -> Result<String, JsError> {
    to_js(parse(dataset).and_then(|ds| uncertainty_table(&ds, nu, step)))
}

#[wasm_bindgen(js_name = sigmaTrace)]
pub fn sigma_trace_js(dataset: &str, dmu: usize, nu: f64, step: f64) -> Result<String, JsError> {
    to_js(parse(dataset).and_then(|ds| sigma_trace(&ds, dmu, nu, step)))
}

/// Parse and validate a dataset given as JSON.
pub fn parse_dataset(json: &str) -> Result<DeaDataset, String> {
    parse(json)
}
