use thiserror::Error;

use crate::lp::{LpError, LpStatus};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeaError {
    #[error("dataset has no DMUs")]
    NoDmus,
    #[error("dataset needs at least one input and one output")]
    MissingVariables,
    #[error("variable '{variable}' has {got} values, expected {expected}")]
    LengthMismatch {
        variable: String,
        expected: usize,
        got: usize,
    },
    #[error("invalid value {value} for DMU '{dmu}', variable '{variable}'")]
    InvalidValue { dmu: String, variable: String, value: f64 },
    #[error("duplicate DMU name '{0}'")]
    DuplicateDmu(String),
    #[error("duplicate variable name '{0}'")]
    DuplicateVariable(String),
    #[error("variable '{0}' is zero for every DMU")]
    ZeroVariable(String),
    #[error("DMU '{0}' has no non-zero input")]
    ZeroInputs(String),
    #[error("DMU '{0}' has no non-zero output")]
    ZeroOutputs(String),
    #[error("DMU index {index} out of range for {count} DMUs")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("scale factor for '{variable}' must be positive and finite, got {factor}")]
    NonPositiveFactor { variable: String, factor: f64 },
    #[error("expected {expected} scale factors, got {got}")]
    FactorCount { expected: usize, got: usize },
    #[error("invalid uncertainty configuration: {0}")]
    InvalidConfig(String),
    #[error("binding input set is empty")]
    EmptyBindingSet,
    #[error("input {input} of the evaluated DMU is not positive")]
    NonPositiveInput { input: usize },
    #[error("gradient of -1 makes the two-dimensional formula singular")]
    DegenerateGradient,
    #[error("extreme points must be non-empty and strictly increasing in both coordinates")]
    UnsortedExtremes,
    #[error("facet enumeration limit exceeded: {what} is {got}, limit {limit}; use the iterative solver")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("linear program for DMU {dmu} ended {status:?}")]
    UnexpectedStatus { dmu: usize, status: LpStatus },
    #[error(transparent)]
    Solver(#[from] LpError),
}

pub type Result<T, E = DeaError> = std::result::Result<T, E>;
