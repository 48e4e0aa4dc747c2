//! Matrix-free action of single-site Pauli operators on state vectors.
//!
//! These routines avoid materializing 2^N x 2^N matrices and keep chains up to
//! N = 16 cheap: one weighted-sum application costs O(N 2^N).
//!
//! Convention: site j in 1..=N maps to bit (N - j) of the basis index, so the
//! binary expansion of the index reads along the chain with site 1 first.
//! Bit value 0 is spin up (+1 under sigma_z).

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::PureState;

/// One of the three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// All three axes, for summing vector observables.
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// Bit mask selecting one 1-based site.
fn bit_of(n: usize, site: usize) -> Result<usize> {
    if site == 0 || site > n {
        return Err(Error::SiteOutOfRange { site, n });
    }
    Ok(1usize << (n - site))
}

/// Applies `sigma_axis` on `site` to an amplitude vector.
pub fn apply_pauli(
    axis: Axis,
    site: usize,
    n: usize,
    v: &DVector<Complex64>,
) -> Result<DVector<Complex64>> {
    let dim = 1usize << n;
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    let bit = bit_of(n, site)?;
    let mut out = DVector::zeros(dim);
    match axis {
        Axis::X => {
            for idx in 0..dim {
                out[idx] = v[idx ^ bit];
            }
        }
        Axis::Y => {
            // sigma_y |0> = i |1>, sigma_y |1> = -i |0>.
            for idx in 0..dim {
                let src = v[idx ^ bit];
                out[idx] = if idx & bit != 0 {
                    Complex64::new(-src.im, src.re) // i * src lands on bit = 1
                } else {
                    Complex64::new(src.im, -src.re) // -i * src lands on bit = 0
                };
            }
        }
        Axis::Z => {
            for idx in 0..dim {
                out[idx] = if idx & bit != 0 { -v[idx] } else { v[idx] };
            }
        }
    }
    Ok(out)
}

/// Applies the weighted sum `sum_j coeffs[j-1] * sigma_axis^(j)` to an
/// amplitude vector in a single pass per site.
pub fn apply_weighted_sum(
    axis: Axis,
    coeffs: &[f64],
    v: &DVector<Complex64>,
) -> Result<DVector<Complex64>> {
    let n = coeffs.len();
    let dim = 1usize << n;
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        });
    }
    let mut out = DVector::zeros(dim);
    for (j, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let bit = 1usize << (n - 1 - j);
        match axis {
            Axis::X => {
                for idx in 0..dim {
                    out[idx] += v[idx ^ bit].scale(a);
                }
            }
            Axis::Y => {
                for idx in 0..dim {
                    let src = v[idx ^ bit];
                    out[idx] += if idx & bit != 0 {
                        Complex64::new(-a * src.im, a * src.re)
                    } else {
                        Complex64::new(a * src.im, -a * src.re)
                    };
                }
            }
            Axis::Z => {
                for idx in 0..dim {
                    let sign = if idx & bit != 0 { -a } else { a };
                    out[idx] += v[idx].scale(sign);
                }
            }
        }
    }
    Ok(out)
}

/// Expectation <psi| sigma_axis^(site) |psi>.
pub fn expect_pauli(state: &PureState, axis: Axis, site: usize) -> Result<f64> {
    let image = apply_pauli(axis, site, state.n_qubits(), state.amplitudes())?;
    Ok(state.amplitudes().dotc(&image).re)
}

/// Expectation <psi| sigma_axis^(j) sigma_axis^(k) |psi> for distinct sites.
pub fn expect_pauli_pair(state: &PureState, axis: Axis, j: usize, k: usize) -> Result<f64> {
    if j == k {
        return Err(Error::InvalidPairing {
            reason: format!("pair correlator needs distinct sites, got ({j}, {k})"),
        });
    }
    let n = state.n_qubits();
    let once = apply_pauli(axis, k, n, state.amplitudes())?;
    let twice = apply_pauli(axis, j, n, &once)?;
    Ok(state.amplitudes().dotc(&twice).re)
}

/// The 2x2 Pauli matrix for an axis, for building dense operators.
pub fn pauli_matrix(axis: Axis) -> nalgebra::Matrix2<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match axis {
        Axis::X => nalgebra::Matrix2::new(zero, one, one, zero),
        Axis::Y => nalgebra::Matrix2::new(zero, -i, i, zero),
        Axis::Z => nalgebra::Matrix2::new(one, zero, zero, -one),
    }
}

/// Dense `sum_j coeffs[j-1] * sigma_axis^(j)` on `coeffs.len()` qubits.
///
/// Intended for small registers (SDP blocks, tests); large chains should use
/// [`apply_weighted_sum`] instead.
pub fn weighted_sum_matrix(axis: Axis, coeffs: &[f64]) -> crate::linalg::DenseOperator {
    let n = coeffs.len();
    let dim = 1usize << n;
    let mut mat = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
    let p = pauli_matrix(axis);
    for (j, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let bit = 1usize << (n - 1 - j);
        for idx in 0..dim {
            let row_bit = (idx & bit != 0) as usize;
            for col_bit in 0..2 {
                let col = (idx & !bit) | (col_bit << (n - 1 - j));
                mat[(idx, col)] += p[(row_bit, col_bit)].scale(a);
            }
        }
    }
    crate::linalg::DenseOperator::new(mat).expect("square by construction")
}
