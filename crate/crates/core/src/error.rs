use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// One violated configuration rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub rule: String,
}

impl Violation {
    pub fn new(field: &'static str, rule: impl Into<String>) -> Self {
        Self {
            field,
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive, got {value:e}")]
    NonPositiveInput { name: &'static str, value: f64 },

    #[error("invalid configuration: {}", join_violations(.0))]
    InvalidConfig(Vec<Violation>),

    #[error("point-mass densities have no pointwise value")]
    DeltaNotPointwise,

    #[error("empty interval [{lo:e}, {hi:e}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("{operation} does not support {kind} densities")]
    UnsupportedDensity {
        operation: &'static str,
        kind: &'static str,
    },

    #[error("invalid tabulated density: {0}")]
    InvalidTable(String),

    #[error("geometry violation: {0}")]
    GeometryViolation(String),

    #[error("no root for target {target:e} in bracket [{lo:e}, {hi:e}]")]
    NoRootInBracket { target: f64, lo: f64, hi: f64 },

    #[error(
        "quadrature did not converge within {intervals} intervals (last scaled change {change:e})"
    )]
    QuadratureNotConverged { intervals: usize, change: f64 },

    #[error("degenerate pattern: {0}")]
    DegeneratePattern(&'static str),

    #[error("logarithm argument {0:e} outside its domain")]
    LogDomain(f64),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("{}: {message}", .path.display())]
    Io { path: PathBuf, message: String },
}

impl Error {
    /// Process exit code for this error: 2 for numerical non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::QuadratureNotConverged { .. } => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, err: impl fmt::Display) -> Self {
        Error::Io {
            path: path.into(),
            message: err.to_string(),
        }
    }
}

/// Returns `value` if it is strictly positive and finite.
pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveInput { name, value })
    }
}
