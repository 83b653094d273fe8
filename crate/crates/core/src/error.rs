//! Crate-wide error type.

use std::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by builders, solvers, and special functions.
#[derive(Debug, Clone)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    Domain(String),
    /// Structurally valid input rejected by an operation's contract.
    Parameter(String),
    /// Problem size above a hard cap (e.g. the dense 2^n oracle).
    SizeLimit(String),
    /// A series or quadrature hit its budget before reaching the target
    /// accuracy. Carries the partial value.
    Accuracy { message: String, partial: f64 },
    /// An iteration failed to converge. Carries the last residual.
    Convergence { message: String, residual: f64 },
    /// A root search found no sign change. Carries the scanned grid
    /// (abscissa, residual) for diagnosis.
    NoBracket { message: String, grid: Vec<(f64, f64)> },
    /// Invalid data point inside a sequence, identified by index.
    Data { message: String, index: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Parameter(m) => write!(f, "parameter error: {m}"),
            Error::SizeLimit(m) => write!(f, "size limit: {m}"),
            Error::Accuracy { message, partial } => {
                write!(f, "accuracy error: {message} (partial value {partial:e})")
            }
            Error::Convergence { message, residual } => {
                write!(f, "convergence error: {message} (last residual {residual:e})")
            }
            Error::NoBracket { message, grid } => {
                let lo = grid.first().map(|p| p.0).unwrap_or(f64::NAN);
                let hi = grid.last().map(|p| p.0).unwrap_or(f64::NAN);
                let min_abs = grid
                    .iter()
                    .map(|p| p.1.abs())
                    .fold(f64::INFINITY, f64::min);
                write!(
                    f,
                    "no bracket: {message} ({} grid points on [{lo:e}, {hi:e}], \
                     min |residual| {min_abs:e})",
                    grid.len()
                )
            }
            Error::Data { message, index } => {
                write!(f, "data error at index {index}: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}
