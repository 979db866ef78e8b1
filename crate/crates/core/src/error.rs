use thiserror::Error;

/// Errors raised by the spectral factorization routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the admissible range of the operation.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The input data does not belong to the domain of the operation
    /// (non-positive density samples, non-factorable polynomials, divergent integrals).
    #[error("domain error: {0}")]
    Domain(String),

    /// A density sample is not strictly positive and no floor was requested.
    #[error("density sample {index} at theta = {theta} is {value}, not strictly positive")]
    NonPositiveSample { index: usize, theta: f64, value: f64 },

    /// Requested bandwidth cannot be represented on the grid without aliasing.
    #[error("bandwidth {bandwidth} aliases on a grid of {n} points (need n > 2K)")]
    Aliasing { bandwidth: usize, n: usize },

    /// Root pairing or another numerically delicate step failed.
    #[error("numerical conditioning: {0}")]
    Conditioning(String),

    /// The computation would exceed the range of the scalar type.
    #[error("needs extended precision: {0}")]
    PrecisionBudget(String),

    /// Malformed external input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
