use std::path::PathBuf;

use thiserror::Error;
use udea_core::DeaError;

/// Ingestion failure. Rows are 1-based file lines (the header is line 1),
/// columns are 1-based.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {row}: malformed CSV: {message}")]
    Malformed { row: u64, message: String },
    #[error("missing header row")]
    MissingHeader,
    #[error("header needs a DMU name column and at least one variable column")]
    NoVariables,
    #[error("column {column}: header '{header}' must start with in:, out: or env:")]
    UnknownPrefix { column: usize, header: String },
    #[error("column {column}: variable name missing in header '{header}'")]
    EmptyName { column: usize, header: String },
    #[error("column {column}: duplicate variable '{name}'")]
    DuplicateVariable { column: usize, name: String },
    #[error("line {row}: expected {expected} fields, found {got}")]
    RaggedRow { row: u64, expected: usize, got: usize },
    #[error("line {row}, column 1: DMU name is empty")]
    MissingName { row: u64 },
    #[error("line {row}, column 1: duplicate DMU '{name}' (first on line {first})")]
    DuplicateDmu { row: u64, name: String, first: u64 },
    #[error("line {row}, column {column} ({variable}): '{text}' is not a finite decimal number")]
    BadNumber {
        row: u64,
        column: usize,
        variable: String,
        text: String,
    },
    #[error("line {row}, column {column} ({variable}): negative value {value}")]
    Negative {
        row: u64,
        column: usize,
        variable: String,
        value: f64,
    },
    #[error("column {column} ({variable}): {reason}")]
    EmptyColumn {
        column: usize,
        variable: String,
        reason: &'static str,
    },
    #[error("no DMU rows after the header")]
    NoRows,
    #[error(transparent)]
    Dataset(#[from] DeaError),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Data(#[from] DeaError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for data and usage errors, 3 when facet enumeration limits are
    /// exceeded, 1 for I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(DeaError::SizeLimit { .. }) => 3,
            CliError::Ingest(IngestError::Io { .. }) | CliError::Write { .. } => 1,
            _ => 2,
        }
    }
}
