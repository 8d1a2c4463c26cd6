//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the admissible domain of a function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },
    /// Argument sits on a pole.
    #[error("pole of {func} at argument {at}")]
    Pole { func: &'static str, at: f64 },
    /// A jet was asked for a derivative (or composition) beyond its order.
    #[error("jet order {requested} exceeds available order {available}")]
    OrderExceeded { requested: usize, available: usize },
    /// Stress-tensor routines are only available for d in {1, 2, 3}.
    #[error("unsupported dimension d = {0}")]
    UnsupportedDimension(u32),
    /// Refinement budget exhausted before the requested tolerance was met.
    #[error("{what} did not converge: error estimate {estimate:e} above tolerance {tol:e}")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        tol: f64,
    },
    /// Invalid problem parameters.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// Failure of one element of a parameter sweep.
    #[error("grid element {index}: {source}")]
    GridElement {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for failures caused by numerical non-convergence rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonConvergence { .. } => true,
            Error::GridElement { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
