//! Frontier hyperplanes, DEA distance and the per-facet minimum uncertainty.
//!
//! A hyperplane is `α·x + β·y = d` in input-output space. Facets of the
//! production possibility set are oriented so that `α >= 0`, `β <= 0` and the
//! set lies on the side `α·x + β·y >= d`.

use crate::dataset::{DeaDataset, VariableRole};
use crate::error::{DeaError, Result};
use crate::lp::dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetKind {
    /// Both input and output coefficients present.
    Interior,
    /// `β = 0`: bounds inputs only (a vertical line in one input, one output).
    InputAxis,
    /// `α = 0`: bounds outputs only (a horizontal line).
    OutputAxis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub offset: f64,
    pub kind: FacetKind,
}

impl Hyperplane {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>, offset: f64) -> Self {
        let kind = if alpha.iter().all(|&a| a == 0.0) {
            FacetKind::OutputAxis
        } else if beta.iter().all(|&b| b == 0.0) {
            FacetKind::InputAxis
        } else {
            FacetKind::Interior
        };
        Hyperplane {
            alpha,
            beta,
            offset,
            kind,
        }
    }

    /// Euclidean norm of `(α, β)`.
    pub fn norm(&self) -> f64 {
        (dot(&self.alpha, &self.alpha) + dot(&self.beta, &self.beta)).sqrt()
    }

    pub fn input_norm(&self) -> f64 {
        dot(&self.alpha, &self.alpha).sqrt()
    }

    /// Same hyperplane scaled to a unit normal.
    pub fn normalized(&self) -> Hyperplane {
        let s = self.norm();
        Hyperplane {
            alpha: self.alpha.iter().map(|a| a / s).collect(),
            beta: self.beta.iter().map(|b| b / s).collect(),
            offset: self.offset / s,
            kind: self.kind,
        }
    }

    /// `α·x + β·y - d`; non-negative on the production side.
    pub fn excess(&self, inputs: &[f64], outputs: &[f64]) -> f64 {
        dot(&self.alpha, inputs) + dot(&self.beta, outputs) - self.offset
    }

    pub fn has_input_component(&self) -> bool {
        self.kind != FacetKind::OutputAxis
    }

    /// `Σα - Σβ` over the outputs that are perturbed (discretionary ones).
    ///
    /// Moving every point by `(+σ, -σ)` shifts the hyperplane offset by
    /// `σ` times this rate.
    pub fn uncertainty_rate(&self, roles: &[VariableRole]) -> f64 {
        let a: f64 = self.alpha.iter().sum();
        let b: f64 = self
            .beta
            .iter()
            .zip(roles)
            .filter(|(_, r)| **r == VariableRole::Discretionary)
            .map(|(b, _)| b)
            .sum();
        a - b
    }
}

/// Projection of a point onto a hyperplane with its outputs held fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetPoint {
    pub inputs: Vec<f64>,
    pub outputs: Vec<f64>,
}

/// Fixed-output projection of `(x, y)` onto `h`; `None` for output-axis facets.
pub fn target_point(inputs: &[f64], outputs: &[f64], h: &Hyperplane) -> Option<TargetPoint> {
    if !h.has_input_component() {
        return None;
    }
    let step = h.excess(inputs, outputs) / dot(&h.alpha, &h.alpha);
    Some(TargetPoint {
        inputs: inputs.iter().zip(&h.alpha).map(|(x, a)| x - step * a).collect(),
        outputs: outputs.to_vec(),
    })
}

/// Distance from `(x, y)` to its fixed-output target on `h`.
pub fn dea_distance_point(inputs: &[f64], outputs: &[f64], h: &Hyperplane) -> f64 {
    if !h.has_input_component() {
        return f64::INFINITY;
    }
    h.excess(inputs, outputs).abs() / h.input_norm()
}

pub fn dea_distance(ds: &DeaDataset, dmu: usize, h: &Hyperplane) -> f64 {
    dea_distance_point(&ds.inputs_of(dmu), &ds.outputs_of(dmu), h)
}

/// Smallest DEA distance over `facets` and the index attaining it (lowest on ties).
pub fn min_dea_distance(ds: &DeaDataset, dmu: usize, facets: &[Hyperplane]) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (k, h) in facets.iter().enumerate() {
        let d = dea_distance(ds, dmu, h);
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, k));
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacetUncertainty {
    pub value: f64,
    /// False when the DMU needs strictly more than `value` (output-axis facets).
    pub attainable: bool,
}

/// Smallest box half-width that brings the virtual DMU onto the translated facet:
/// `|α·x + β·y - d| / (2 |Σβ - Σα|)`.
pub fn min_uncertainty_to_facet(ds: &DeaDataset, dmu: usize, h: &Hyperplane) -> FacetUncertainty {
    let excess = h.excess(&ds.inputs_of(dmu), &ds.outputs_of(dmu)).abs();
    let rate = h.uncertainty_rate(ds.output_roles()).abs();
    let value = if rate > 0.0 {
        excess / (2.0 * rate)
    } else {
        f64::INFINITY
    };
    FacetUncertainty {
        value,
        attainable: h.has_input_component(),
    }
}

/// `h` after moving every point by `+σ` in each input and `-σ` in each output.
pub fn translate_facet(h: &Hyperplane, sigma: f64) -> Hyperplane {
    let roles = vec![VariableRole::Discretionary; h.beta.len()];
    translate_facet_with_roles(h, sigma, &roles)
}

/// As [`translate_facet`], leaving environmental outputs in place.
pub fn translate_facet_with_roles(h: &Hyperplane, sigma: f64, roles: &[VariableRole]) -> Hyperplane {
    Hyperplane {
        offset: h.offset + sigma * h.uncertainty_rate(roles),
        ..h.clone()
    }
}

/// Closed form for one input and one output: the uncertainty needed to bring
/// `c` onto the translated line through `a` with gradient `g`.
pub fn min_uncertainty_2d(xc: f64, yc: f64, xa: f64, ya: f64, gradient: f64) -> Result<f64> {
    let denom = 2.0 * (1.0 + gradient);
    if denom.abs() < 1e-15 {
        return Err(DeaError::DegenerateGradient);
    }
    Ok((gradient * (xc - xa) - yc + ya) / denom)
}

/// Frontier piece that a one-input, one-output DMU should be compared against.
/// Indices refer to the sorted extreme points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment2d {
    /// Vertical line through the first extreme point.
    Vertical(usize),
    /// Segment between two consecutive extreme points.
    Between(usize, usize),
    /// Horizontal line through the last extreme point.
    Horizontal(usize),
}

/// Bucket `point` by `x + y` against the sums of consecutive extreme points.
pub fn select_segment_2d(extremes: &[(f64, f64)], point: (f64, f64)) -> Result<Segment2d> {
    if extremes.is_empty() || extremes.windows(2).any(|w| !(w[0].0 < w[1].0 && w[0].1 < w[1].1)) {
        return Err(DeaError::UnsortedExtremes);
    }
    let s = point.0 + point.1;
    let sums: Vec<f64> = extremes.iter().map(|(x, y)| x + y).collect();
    if s <= sums[0] {
        return Ok(Segment2d::Vertical(0));
    }
    for k in 0..sums.len() - 1 {
        if s <= sums[k + 1] {
            return Ok(Segment2d::Between(k, k + 1));
        }
    }
    Ok(Segment2d::Horizontal(extremes.len() - 1))
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

    fn line(a: f64, b: f64, d: f64) -> Hyperplane {
        Hyperplane::new(vec![a], vec![b], d)
    }

    #[test]
    fn kinds() {
        assert_eq!(line(1.0, 0.0, 1.0).kind, FacetKind::InputAxis);
        assert_eq!(line(0.0, -1.0, -8.0).kind, FacetKind::OutputAxis);
        assert_eq!(line(3.0, -2.0, 1.0).kind, FacetKind::Interior);
    }

    #[test]
    fn distances_and_targets() {
        let ds = frontier6();
        let ab = line(3.0, -2.0, 1.0);
        assert!(dea_distance(&ds, 1, &ab).abs() < 1e-12);
        assert!((dea_distance(&ds, 4, &ab) - 13.0 / 3.0).abs() < 1e-12);
        let bc = line(3.0, -4.0, -7.0);
        let t = target_point(&[8.0], &[5.0], &bc).unwrap();
        assert!((t.inputs[0] - 13.0 / 3.0).abs() < 1e-12);
        assert!(bc.excess(&t.inputs, &t.outputs).abs() < 1e-12);
        assert!(target_point(&[8.0], &[5.0], &line(0.0, -1.0, -8.0)).is_none());
        assert_eq!(dea_distance(&ds, 4, &line(0.0, -1.0, -8.0)), f64::INFINITY);
    }

    #[test]
    fn distance_is_scale_free() {
        let ds = frontier6();
        let bc = line(3.0, -4.0, -7.0);
        assert!((dea_distance(&ds, 5, &bc) - dea_distance(&ds, 5, &bc.normalized())).abs() < 1e-12);
        assert!((bc.normalized().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn translation() {
        let ab = translate_facet(&line(3.0, -2.0, 1.0), 1.3);
        assert!((ab.offset - 7.5).abs() < 1e-12);
        assert!(ab.excess(&[6.0 - 1.3], &[2.0 + 1.3]).abs() < 1e-12);
        assert_eq!(translate_facet(&line(3.0, -2.0, 1.0), 0.0), line(3.0, -2.0, 1.0));
        assert!((translate_facet(&line(1.0, 0.0, 1.0), 0.5).offset - 1.5).abs() < 1e-15);
    }

    #[test]
    fn environmental_outputs_do_not_translate() {
        let h = Hyperplane::new(vec![1.0], vec![-1.0, -2.0], 0.0);
        let roles = [VariableRole::Discretionary, VariableRole::Environmental];
        assert!((translate_facet_with_roles(&h, 1.0, &roles).offset - 2.0).abs() < 1e-15);
        assert!((translate_facet(&h, 1.0).offset - 4.0).abs() < 1e-15);
    }

    #[test]
    fn per_facet_uncertainty() {
        let ds = frontier6();
        let bc = min_uncertainty_to_facet(&ds, 4, &line(3.0, -4.0, -7.0));
        assert!((bc.value - 11.0 / 14.0).abs() < 1e-12);
        assert!(bc.attainable);
        let d = min_uncertainty_to_facet(&ds, 4, &line(0.0, -1.0, -8.0));
        assert!((d.value - 1.5).abs() < 1e-12);
        assert!(!d.attainable);
        assert_eq!(min_uncertainty_to_facet(&ds, 0, &line(1.0, 0.0, 1.0)).value, 0.0);
    }

    #[test]
    fn two_dimensional_formula() {
        assert!((min_uncertainty_2d(8.0, 5.0, 3.0, 4.0, 0.75).unwrap() - 11.0 / 14.0).abs() < 1e-12);
        assert!((min_uncertainty_2d(6.0, 2.0, 3.0, 4.0, 0.75).unwrap() - 17.0 / 14.0).abs() < 1e-12);
        assert_eq!(min_uncertainty_2d(5.0, 5.75, 3.0, 4.0, 0.875).unwrap(), 0.0);
        assert!(matches!(
            min_uncertainty_2d(1.0, 1.0, 0.0, 0.0, -1.0),
            Err(DeaError::DegenerateGradient)
        ));
    }

    #[test]
    fn segment_buckets() {
        let ext = [(1.0, 1.0), (3.0, 4.0), (7.0, 7.0), (10.0, 8.0)];
        assert_eq!(select_segment_2d(&ext, (8.0, 5.0)).unwrap(), Segment2d::Between(1, 2));
        assert_eq!(select_segment_2d(&ext, (6.0, 2.0)).unwrap(), Segment2d::Between(1, 2));
        assert_eq!(select_segment_2d(&ext, (0.5, 0.5)).unwrap(), Segment2d::Vertical(0));
        assert_eq!(select_segment_2d(&ext, (20.0, 1.0)).unwrap(), Segment2d::Horizontal(3));
        assert_eq!(
            select_segment_2d(&ext[..1], (5.0, 5.0)).unwrap(),
            Segment2d::Horizontal(0)
        );
        assert!(select_segment_2d(&[(3.0, 4.0), (1.0, 1.0)], (0.0, 0.0)).is_err());
        assert!(select_segment_2d(&[], (0.0, 0.0)).is_err());
    }
}
