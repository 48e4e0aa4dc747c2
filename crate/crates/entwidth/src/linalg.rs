//! Dense complex linear algebra: operators, states, density matrices,
//! Hermitian eigendecomposition and partial transposition.
//!
//! Everything is stored densely. Full diagonalization is intended for chains
//! up to N = 14 sites; beyond that the matrix-free routines in [`crate::pauli`]
//! carry the load (up to N = 16).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// A dense complex square matrix acting on a register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    mat: DMatrix<Complex64>,
}

impl DenseOperator {
    /// Wraps a square matrix. Fails if the matrix is not square.
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                expected: mat.nrows(),
                found: mat.ncols(),
            });
        }
        Ok(DenseOperator { mat })
    }

    /// Builds an operator from a real matrix.
    pub fn from_real(mat: &DMatrix<f64>) -> Result<Self> {
        Self::new(mat.map(|x| Complex64::new(x, 0.0)))
    }

    /// The identity on a `dim`-dimensional space.
    pub fn identity(dim: usize) -> Self {
        DenseOperator {
            mat: DMatrix::identity(dim, dim),
        }
    }

    /// The zero operator on a `dim`-dimensional space.
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Number of qubits, if the dimension is a power of two.
    pub fn n_qubits(&self) -> Result<usize> {
        n_qubits_of_dim(self.dim())
    }

    /// Borrow the underlying matrix.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Consume into the underlying matrix.
    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    /// Largest |A - A^dag| entry.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let dev = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Whether the operator is Hermitian within the crate tolerance
    /// (scaled by the largest entry).
    pub fn is_hermitian(&self) -> bool {
        let scale = 1.0 + self.max_abs();
        self.hermiticity_residual() <= tol::HERMITICITY_TOL * scale
    }

    /// Errors unless the operator is Hermitian within tolerance.
    pub fn assert_hermitian(&self) -> Result<()> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(Error::NotHermitian {
                residual: self.hermiticity_residual(),
            })
        }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part magnitude; zero means the operator is real.
    pub fn max_imag(&self) -> f64 {
        self.mat.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// `self * rhs` (matrix product).
    pub fn mul(&self, rhs: &DenseOperator) -> Result<DenseOperator> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        Ok(DenseOperator {
            mat: &self.mat * &rhs.mat,
        })
    }

    /// `self + rhs`.
    pub fn add(&self, rhs: &DenseOperator) -> Result<DenseOperator> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        Ok(DenseOperator {
            mat: &self.mat + &rhs.mat,
        })
    }

    /// `self` scaled by a real factor.
    pub fn scaled(&self, factor: f64) -> DenseOperator {
        DenseOperator {
            mat: self.mat.scale(factor),
        }
    }

    /// Hermitian adjoint.
    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            mat: self.mat.adjoint(),
        }
    }

    /// Apply to a state vector, returning the (generally unnormalized) image.
    pub fn apply_vec(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if self.dim() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(&self.mat * v)
    }
}

/// Number of qubits for a power-of-two dimension, or an error.
pub fn n_qubits_of_dim(dim: usize) -> Result<usize> {
    if dim >= 2 && dim.is_power_of_two() {
        Ok(dim.trailing_zeros() as usize)
    } else {
        Err(Error::NotPowerOfTwo { dim })
    }
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    DenseOperator {
        mat: a.matrix().kronecker(b.matrix()),
    }
}

/// A normalized pure state of `n` qubits.
///
/// Site 1 is the most significant bit of the computational-basis index, so the
/// basis label reads left to right along the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amp: DVector<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, validating length and normalization.
    pub fn new(n: usize, amp: DVector<Complex64>) -> Result<Self> {
        if amp.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1usize << n,
                found: amp.len(),
            });
        }
        let norm = amp.norm();
        if (norm - 1.0).abs() > tol::NORM_TOL {
            return Err(Error::InvalidNorm { norm });
        }
        Ok(PureState { n, amp })
    }

    /// Wraps an amplitude vector after rescaling it to unit norm.
    pub fn normalized(n: usize, amp: DVector<Complex64>) -> Result<Self> {
        if amp.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1usize << n,
                found: amp.len(),
            });
        }
        let norm = amp.norm();
        if norm < 1e-300 {
            return Err(Error::InvalidNorm { norm });
        }
        Ok(PureState {
            n,
            amp: amp.unscale(norm),
        })
    }

    /// The computational basis state |index> of `n` qubits.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amp = DVector::zeros(dim);
        amp[index] = Complex64::new(1.0, 0.0);
        Ok(PureState { n, amp })
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    /// Borrow the amplitude vector.
    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amp
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self.amp.dotc(&other.amp))
    }

    /// Norm (1 by construction, up to roundoff).
    pub fn norm(&self) -> f64 {
        self.amp.norm()
    }

    /// Rank-one density matrix |psi><psi|.
    pub fn to_density(&self) -> DensityMatrix {
        let mat = &self.amp * self.amp.adjoint();
        DensityMatrix {
            n: self.n,
            mat: DenseOperator { mat },
        }
    }
}

/// A density matrix of `n` qubits: Hermitian, unit trace, positive
/// semidefinite (all validated on construction, within the crate tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    mat: DenseOperator,
}

impl DensityMatrix {
    /// Validates and wraps a candidate density matrix.
    pub fn new(op: DenseOperator) -> Result<Self> {
        let n = op.n_qubits()?;
        op.assert_hermitian()?;
        let trace = op.trace();
        if (trace.re - 1.0).abs() > tol::TRACE_TOL || trace.im.abs() > tol::TRACE_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eig = hermitian_eig(&op)?;
        let min_eigenvalue = eig.values[0];
        if min_eigenvalue < -tol::PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(DensityMatrix { n, mat: op })
    }

    /// Internal constructor bypassing validation (use only for matrices that
    /// are PSD/unit-trace by construction).
    pub(crate) fn from_parts_unchecked(n: usize, mat: DenseOperator) -> Self {
        DensityMatrix { n, mat }
    }

    /// Rank-one projector onto a pure state.
    pub fn from_pure(psi: &PureState) -> Self {
        psi.to_density()
    }

    /// The maximally mixed state of `n` qubits.
    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        DensityMatrix {
            n,
            mat: DenseOperator::identity(dim).scaled(1.0 / dim as f64),
        }
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Borrow the underlying operator.
    pub fn operator(&self) -> &DenseOperator {
        &self.mat
    }

    /// Borrow the underlying matrix.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.mat.matrix()
    }
}

/// Eigendecomposition of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors; column k pairs with `values[k]`.
    pub vectors: DMatrix<Complex64>,
}

/// Full eigendecomposition of a Hermitian operator, eigenvalues ascending.
///
/// Real-symmetric inputs (no imaginary part) take a faster all-real path;
/// complex Hermitian inputs use the complex solver. Rejects non-Hermitian
/// input.
pub fn hermitian_eig(op: &DenseOperator) -> Result<EigDecomposition> {
    op.assert_hermitian()?;
    let dim = op.dim();
    let scale = op.max_abs();

    let (values, vectors) = if op.max_imag() <= tol::TIGHT_TOL * (1.0 + scale) {
        let real = op.matrix().map(|z| z.re);
        let eig = real.symmetric_eigen();
        let vecs = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        (eig.eigenvalues, vecs)
    } else {
        let eig = op.matrix().clone().symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors)
    };

    // Sort ascending, permuting eigenvector columns to match.
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let sorted_values: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let mut sorted_vectors = DMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        sorted_vectors.set_column(dst, &vectors.column(src));
    }
    Ok(EigDecomposition {
        values: sorted_values,
        vectors: sorted_vectors,
    })
}

/// Ground energy and a normalized ground state of a Hermitian operator
/// whose dimension is a power of two.
pub fn ground_state(op: &DenseOperator) -> Result<(f64, PureState)> {
    let n = op.n_qubits()?;
    let eig = hermitian_eig(op)?;
    let energy = eig.values[0];
    let col = eig.vectors.column(0).into_owned();
    let state = PureState::normalized(n, col)?;
    Ok((energy, state))
}

/// Bit mask (over basis indices) selecting the listed 1-based sites.
pub(crate) fn site_mask(n: usize, sites: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &site in sites {
        if site == 0 || site > n {
            return Err(Error::SiteOutOfRange { site, n });
        }
        let bit = 1usize << (n - site);
        if mask & bit != 0 {
            return Err(Error::InvalidPairing {
                reason: format!("site {site} listed twice in a partial-transpose subset"),
            });
        }
        mask |= bit;
    }
    Ok(mask)
}

/// Partial transpose of a matrix over the sites selected by `mask`.
pub(crate) fn partial_transpose_mat(
    mat: &DMatrix<Complex64>,
    mask: usize,
) -> DMatrix<Complex64> {
    let dim = mat.nrows();
    let mut out = DMatrix::zeros(dim, dim);
    for c in 0..dim {
        for r in 0..dim {
            let rp = (r & !mask) | (c & mask);
            let cp = (c & !mask) | (r & mask);
            out[(r, c)] = mat[(rp, cp)];
        }
    }
    out
}

/// Partial transpose of a density matrix over a subset of sites (1-based).
///
/// The result is Hermitian and unit trace but in general not positive, so it
/// is returned as a plain operator.
pub fn partial_transpose(rho: &DensityMatrix, sites: &[usize]) -> Result<DenseOperator> {
    let mask = site_mask(rho.n_qubits(), sites)?;
    Ok(DenseOperator {
        mat: partial_transpose_mat(rho.matrix(), mask),
    })
}
