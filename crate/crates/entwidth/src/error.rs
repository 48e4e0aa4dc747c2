//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by state builders, observables, criteria and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A qubit operator or state whose dimension is not a power of two.
    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },

    /// An operator that must be Hermitian is not (within tolerance).
    #[error("operator is not Hermitian (max |A - A^dag| = {residual:.3e})")]
    NotHermitian { residual: f64 },

    /// A state vector that must be normalized is not.
    #[error("state vector norm {norm} is not 1 within tolerance")]
    InvalidNorm { norm: f64 },

    /// A density matrix whose trace is not 1.
    #[error("density matrix trace {trace} is not 1 within tolerance")]
    TraceNotOne { trace: f64 },

    /// A density matrix with a significantly negative eigenvalue.
    #[error("density matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    /// A site index outside 1..=n.
    #[error("site {site} out of range for a chain of {n} sites")]
    SiteOutOfRange { site: usize, n: usize },

    /// A pairing configuration that is not a partition of the chain.
    #[error("invalid pairing configuration: {reason}")]
    InvalidPairing { reason: String },

    /// A Bloch vector that is not a unit vector.
    #[error("Bloch vector norm {norm} is not 1 within tolerance")]
    InvalidBloch { norm: f64 },

    /// Mixture weights that are not a probability vector.
    #[error("invalid mixture weights: {reason}")]
    InvalidWeights { reason: String },

    /// A chain shorter than an operation supports.
    #[error("chain length {n} too short; need at least {min}")]
    ChainTooShort { n: usize, min: usize },

    /// A chain longer than an operation supports.
    #[error("chain length {n} too long; supported maximum is {max}")]
    ChainTooLong { n: usize, max: usize },

    /// A chain length violating a parity/divisibility requirement.
    #[error("chain length {n} invalid: {requirement}")]
    ParityConstraint { n: usize, requirement: &'static str },

    /// A scalar or range parameter outside its admissible domain.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// The interior-point solver failed to reach the requested duality gap.
    #[error(
        "SDP did not converge: primal {primal:.9e}, dual bound {dual:.9e} after {iterations} iterations"
    )]
    SdpNoConvergence {
        primal: f64,
        dual: f64,
        iterations: usize,
    },

    /// JSON (de)serialization failure for configuration or pairing files.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for [`Error::InvalidParameter`].
    pub fn invalid_parameter(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
