//! Centralized numerical tolerances.
//!
//! Every comparison in the crate goes through one of these named constants so
//! that the acceptance suite, the unit tests and the library agree on what
//! "equal" means. Comparisons are absolute unless a quantity grows with the
//! chain length, in which case the relative form is noted on the constant.

/// Max allowed deviation of a state-vector norm from 1.
pub const NORM_TOL: f64 = 1e-12;

/// Max allowed |A - A^dag| entry for an operator that claims to be Hermitian,
/// relative to (1 + max |entry|).
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Most negative admissible eigenvalue of a density matrix.
pub const PSD_TOL: f64 = 1e-10;

/// Max allowed deviation of a density-matrix trace from 1.
pub const TRACE_TOL: f64 = 1e-12;

/// Eigen-residual budget for `hermitian_eig`: ||A v - lambda v|| per pair,
/// relative to max(1, max |lambda|).
pub const EIG_RESIDUAL_TOL: f64 = 1e-9;

/// Max allowed deviation of a Bloch vector norm from 1.
pub const BLOCH_TOL: f64 = 1e-10;

/// Margin used by every criterion flag: a bound counts as violated only when
/// the observable is below (bound - CRITERION_TOL).
pub const CRITERION_TOL: f64 = 1e-9;

/// Agreement required between the closed-form pair-variance minimum and the
/// multistart numerical oracle.
pub const PAIR_ORACLE_TOL: f64 = 1e-6;

/// Slack allowed when checking that admissible states never beat a bound
/// (soundness sweeps).
pub const SOUNDNESS_SLACK: f64 = 1e-8;

/// Slack added to the conjectured magnification line before counting a sample
/// as a violation.
pub const CONJECTURE_SLACK: f64 = 1e-6;

/// Relative threshold under which eigenvalues count as degenerate with the
/// ground energy (relative to max(1, |E0|)).
pub const DEGENERACY_REL_TOL: f64 = 1e-8;

/// Two floating point grids/coefficients considered identical below this.
pub const TIGHT_TOL: f64 = 1e-12;
