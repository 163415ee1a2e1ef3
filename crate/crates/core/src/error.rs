//! Error type shared across the crate.

use std::fmt;

/// Errors produced by solver construction and execution.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter fell outside its admissible domain. Carries the parameter
    /// name so callers can point at the offending input.
    Domain { param: &'static str, message: String },
    /// Vector lengths disagree (history levels, slopes, right-hand sides).
    Shape(String),
    /// An operation was invoked in a way its contract does not cover
    /// (missing exact solution, non-halving step list, ...).
    Usage(String),
    /// The marcher produced a non-finite value at the given time level.
    NonFinite { level: usize },
    /// Linear-algebra failure: lost diagonal dominance, residual check
    /// failure, or a singular dense system.
    Solver(String),
    /// The dense space-time oracle was asked for a system above its guard.
    SizeGuard { actual: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { param, message } => write!(f, "domain error for `{param}`: {message}"),
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::NonFinite { level } => {
                write!(f, "non-finite value detected at time level {level}")
            }
            Error::Solver(msg) => write!(f, "solver error: {msg}"),
            Error::SizeGuard { actual, limit } => write!(
                f,
                "dense oracle guard exceeded: {actual} unknowns (limit {limit})"
            ),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
