//! Entanglement-width toolkit for spin-1/2 chains.
//!
//! The crate builds the observables, reference states, criteria and bounds
//! needed to certify how far apart entangled particles sit in a spin chain:
//!
//! * [`linalg`] — dense operators, states, Hermitian eigendecomposition,
//!   partial transposition;
//! * [`pauli`] — matrix-free Pauli applications for chains up to N = 16;
//! * [`spin`] — chain geometry and the J, H1, H2(alpha), B observables;
//! * [`states`] — singlet pairings, product states, domain wall, mixtures;
//! * [`variance`] — the pair-variance criterion and width-resolved bounds;
//! * [`chi`] — the chi criterion, circulant bounds and the alpha scan;
//! * [`sdp`] — a self-contained interior-point solver for PPT relaxations;
//! * [`gradient`] — the B^2 vs J^2 magnification criterion and certificates;
//! * [`qfi`] — gradient-generator dynamics and the quantum Fisher information;
//! * [`report`] — bound reports and deterministic CSV/JSON serialization.
//!
//! Conventions used throughout: sites are 1-based; site 1 is the most
//! significant bit of a basis index; positions are in units of the lattice
//! spacing (x_j = x0 + j) and wavelengths enter as lambda/d; bond sums count
//! each bond once.

pub mod chi;
pub mod error;
pub mod gradient;
pub mod linalg;
pub mod pauli;
pub mod qfi;
pub mod random;
pub mod report;
pub mod sdp;
pub mod spin;
pub mod states;
pub mod tol;
pub mod variance;

pub use error::{Error, Result};
