//! Data envelopment analysis under box uncertainty.
//!
//! The crate scores decision making units with the input-oriented BCC model,
//! evaluates their best-case score when every datum may move within a box of
//! half-width σ, and finds the smallest σ under which a unit becomes
//! efficient, either exactly through the frontier facets or by a grid search.
//!
//! ```
//! use udea_core::{DeaDataset, solve_nominal, exact_udea};
//!
//! let ds = DeaDataset::builder(["A", "B", "C", "D", "E", "F"])
//!     .input("x", [1.0, 3.0, 7.0, 10.0, 8.0, 6.0])
//!     .output("y", [1.0, 4.0, 7.0, 8.0, 5.0, 2.0])
//!     .build()
//!     .unwrap();
//! let e = solve_nominal(&ds, 4).unwrap();
//! assert!((e.score - 13.0 / 24.0).abs() < 1e-9);
//! let u = exact_udea(&ds, 4, f64::INFINITY).unwrap();
//! assert!((u.upsilon.unwrap() - 11.0 / 14.0).abs() < 1e-9);
//! ```

pub mod dataset;
pub mod dea;
pub mod error;
pub mod facets;
pub mod geometry;
pub mod lp;
pub mod preset;
pub mod robust;
pub mod udea;

pub use dataset::{scale_dataset, DeaDataset, VariableRole};
pub use dea::{extreme_dmus, is_extreme, solve_all, solve_nominal, EfficiencyResult};
pub use error::{DeaError, Result};
pub use facets::{
    enumerate_efficient_facets, enumerate_efficient_facets_with, exact_udea, exact_udea_on, FacetLimits, FacetSet,
};
pub use geometry::{
    dea_distance, min_uncertainty_2d, min_uncertainty_to_facet, select_segment_2d, target_point, translate_facet,
    FacetKind, Hyperplane, Segment2d,
};
pub use preset::Preset;
pub use robust::{robust_efficiency, robust_efficiency_with, transform_box, UncertaintyConfig};
pub use udea::{classify_capability, iterative_udea, udea_sweep, Capability, SolveMethod, UdeaOutcome};
