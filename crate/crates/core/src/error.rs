//! Error type shared by every module in the crate.

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the numerical routines and model constructors.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// A bracketing method was handed endpoints that do not straddle a root.
    #[error("bracket error: f({lo}) and f({hi}) have the same sign")]
    Bracket { lo: f64, hi: f64 },

    /// An iteration exhausted its budget before meeting tolerance.
    #[error("{context}: no convergence after {max_iter} iterations")]
    Convergence {
        context: &'static str,
        max_iter: u32,
    },

    /// The simulation disc is too small relative to the interference radius.
    #[error("simulation region radius {given} is below the required minimum {required}")]
    RegionTooSmall { given: f64, required: f64 },

    /// A run configuration is internally inconsistent.
    #[error("configuration error: {0}")]
    Config(&'static str),
}
