//! Batch front end: CSV ingestion, run configuration and reports.

pub mod config;
pub mod error;
pub mod ingest;
pub mod report;
pub mod run;

pub use config::{parse_scale, Format, Mode, RunConfig};
pub use error::{CliError, IngestError};
pub use ingest::{emit_csv, ingest_csv, parse_csv};
pub use report::{Cell, Table};
pub use run::{run, sigma_grid, write_outputs, RunOutput};
