//! Chain geometry and the spin observables built on it: the position-weighted
//! collective operator J, the Heisenberg ring H1, the J1-J2 ring H2(alpha),
//! and the linear-gradient operator components B_l.
//!
//! Positions are measured in units of the lattice spacing d, so site j sits at
//! x_j = x0 + j and every wavelength enters as the ratio lambda/d.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, DensityMatrix, PureState};
use crate::pauli::{self, Axis};

/// Equally spaced chain of `n` spin-1/2 sites with offset `x0` (units of d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainGeometry {
    n: usize,
    x0: f64,
}

impl ChainGeometry {
    /// A chain of `n >= 2` sites at positions x_j = x0 + j, j = 1..=n.
    pub fn new(n: usize, x0: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ChainTooShort { n, min: 2 });
        }
        if !x0.is_finite() {
            return Err(Error::invalid_parameter("x0", "offset must be finite"));
        }
        Ok(ChainGeometry { n, x0 })
    }

    /// Number of sites.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Offset of the chain, in units of d.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Position of site j (1-based), in units of d.
    pub fn position(&self, j: usize) -> f64 {
        self.x0 + j as f64
    }
}

/// A sum of one Pauli axis over all sites with per-site weights:
/// `sum_j coeffs[j-1] sigma_axis^(j)` for each axis, applied matrix-free.
///
/// The dense component matrices are only materialized on demand; at N = 16 a
/// dense 2^N-dimensional operator would not fit in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSpinSum {
    coeffs: Vec<f64>,
}

impl WeightedSpinSum {
    /// Builds the weighted sum from one coefficient per site.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ChainTooShort {
                n: coeffs.len(),
                min: 2,
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid_parameter(
                "coeffs",
                "coefficients must be finite",
            ));
        }
        Ok(WeightedSpinSum { coeffs })
    }

    /// Number of sites.
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Per-site coefficients.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Applies one axis component to an amplitude vector.
    pub fn apply_component(
        &self,
        axis: Axis,
        v: &DVector<Complex64>,
    ) -> Result<DVector<Complex64>> {
        pauli::apply_weighted_sum(axis, &self.coeffs, v)
    }

    /// Dense matrix of one axis component (small chains only).
    pub fn component_matrix(&self, axis: Axis) -> DenseOperator {
        pauli::weighted_sum_matrix(axis, &self.coeffs)
    }

    /// Expectation of one axis component on a pure state.
    pub fn component_expectation(&self, axis: Axis, state: &PureState) -> Result<f64> {
        let image = self.apply_component(axis, state.amplitudes())?;
        Ok(state.amplitudes().dotc(&image).re)
    }

    /// Sum over the three axes of the component variances on a pure state:
    /// `sum_l (<O_l^2> - <O_l>^2)`.
    pub fn variance_sum(&self, state: &PureState) -> Result<f64> {
        let mut total = 0.0;
        for axis in Axis::ALL {
            let image = self.apply_component(axis, state.amplitudes())?;
            let second = image.norm_squared();
            let first = state.amplitudes().dotc(&image).re;
            total += second - first * first;
        }
        Ok(total)
    }

    /// Sum over the three axes of `<O_l^2>` on a pure state.
    pub fn square_expectation(&self, state: &PureState) -> Result<f64> {
        let mut total = 0.0;
        for axis in Axis::ALL {
            let image = self.apply_component(axis, state.amplitudes())?;
            total += image.norm_squared();
        }
        Ok(total)
    }

    /// Dense `sum_l O_l^2` (small chains only), e.g. J^2 or B^2 for the SDP.
    pub fn square_matrix(&self) -> DenseOperator {
        let dim = 1usize << self.n();
        let mut total = DenseOperator::zeros(dim);
        for axis in Axis::ALL {
            let c = self.component_matrix(axis);
            total = total.add(&c.mul(&c).expect("same dim")).expect("same dim");
        }
        total
    }
}

/// The gradient observable: J_l = sum_j sin(2 pi x_j / lambda) sigma_l^(j).
#[derive(Debug, Clone, PartialEq)]
pub struct GradientObservable {
    geometry: ChainGeometry,
    lambda_over_d: f64,
    sum: WeightedSpinSum,
}

impl GradientObservable {
    /// Chain geometry the observable was built on.
    pub fn geometry(&self) -> &ChainGeometry {
        &self.geometry
    }

    /// Wavelength in units of d.
    pub fn lambda_over_d(&self) -> f64 {
        self.lambda_over_d
    }

    /// Per-site coefficients a_j = sin(2 pi x_j / lambda).
    pub fn coefficients(&self) -> &[f64] {
        self.sum.coefficients()
    }

    /// The underlying weighted sum (for matrix-free work).
    pub fn weighted_sum(&self) -> &WeightedSpinSum {
        &self.sum
    }

    /// Dense matrix of one component (small chains only).
    pub fn component_matrix(&self, axis: Axis) -> DenseOperator {
        self.sum.component_matrix(axis)
    }

    /// Total variance `(Delta J)^2 = sum_l (<J_l^2> - <J_l>^2)` on a pure state.
    pub fn variance(&self, state: &PureState) -> Result<f64> {
        self.check_n(state.n_qubits())?;
        self.sum.variance_sum(state)
    }

    /// Total variance on a density matrix (dense; small chains only).
    pub fn variance_rho(&self, rho: &DensityMatrix) -> Result<f64> {
        self.check_n(rho.n_qubits())?;
        let mut total = 0.0;
        for axis in Axis::ALL {
            let c = self.sum.component_matrix(axis);
            let c2 = c.mul(&c)?;
            let first = expectation_rho(&c, rho)?;
            let second = expectation_rho(&c2, rho)?;
            total += second - first * first;
        }
        Ok(total)
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n != self.geometry.n() {
            return Err(Error::DimensionMismatch {
                expected: self.geometry.n(),
                found: n,
            });
        }
        Ok(())
    }
}

/// Builds the gradient observable for a chain and a wavelength ratio
/// lambda/d != 0. When d/lambda is an integer and x0 = lambda/4 the
/// coefficients all equal 1 and J reduces to the collective spin operator.
pub fn build_j(geometry: ChainGeometry, lambda_over_d: f64) -> Result<GradientObservable> {
    if lambda_over_d == 0.0 || !lambda_over_d.is_finite() {
        return Err(Error::invalid_parameter(
            "lambda_over_d",
            "wavelength ratio must be finite and nonzero",
        ));
    }
    let coeffs: Vec<f64> = (1..=geometry.n())
        .map(|j| (2.0 * std::f64::consts::PI * geometry.position(j) / lambda_over_d).sin())
        .collect();
    Ok(GradientObservable {
        geometry,
        lambda_over_d,
        sum: WeightedSpinSum::new(coeffs)?,
    })
}

/// The collective spin observable (all coefficients 1) on `n` sites.
pub fn collective_spin(n: usize) -> Result<WeightedSpinSum> {
    WeightedSpinSum::new(vec![1.0; n])
}

/// Dense Heisenberg ring H1 = sum_j sigma_j . sigma_{j+1}, periodic, N >= 3.
///
/// Each bond is counted once, so <up...up| H1 |up...up> = N.
pub fn build_h1(n: usize) -> Result<DenseOperator> {
    if n < 3 {
        return Err(Error::ChainTooShort { n, min: 3 });
    }
    heisenberg_ring(n, &[(1, 1.0)])
}

/// Dense J1-J2 ring H2(alpha) = H1 + alpha sum_j sigma_j . sigma_{j+2}, N >= 5.
pub fn build_h2(n: usize, alpha: f64) -> Result<DenseOperator> {
    if n < 5 {
        return Err(Error::ChainTooShort { n, min: 5 });
    }
    if !alpha.is_finite() {
        return Err(Error::invalid_parameter("alpha", "must be finite"));
    }
    heisenberg_ring(n, &[(1, 1.0), (2, alpha)])
}

/// Dense sum of sigma.sigma couplings at the given (distance, strength) pairs
/// on a periodic ring. Built in real arithmetic (sigma.sigma terms are real).
pub(crate) fn heisenberg_ring(n: usize, couplings: &[(usize, f64)]) -> Result<DenseOperator> {
    let dim = 1usize << n;
    let mut mat = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for &(dist, strength) in couplings {
        if strength == 0.0 {
            continue;
        }
        for j in 1..=n {
            let k = (j - 1 + dist) % n + 1;
            add_sigma_dot_sigma(&mut mat, n, j, k, strength);
        }
    }
    DenseOperator::from_real(&mat)
}

/// Adds `strength * sigma_j . sigma_k` to a real matrix.
///
/// In the computational basis the bond operator acts as
/// sigma_z sigma_z (diagonal, +-1) plus an exchange 2(|01><10| + |10><01|)
/// on the (j, k) bit pair; all entries are real.
fn add_sigma_dot_sigma(mat: &mut nalgebra::DMatrix<f64>, n: usize, j: usize, k: usize, strength: f64) {
    let bj = 1usize << (n - j);
    let bk = 1usize << (n - k);
    let dim = 1usize << n;
    for idx in 0..dim {
        let sj = idx & bj != 0;
        let sk = idx & bk != 0;
        let zz = if sj == sk { 1.0 } else { -1.0 };
        mat[(idx, idx)] += strength * zz;
        if sj != sk {
            // sigma_x sigma_x + sigma_y sigma_y flips the antiparallel pair.
            mat[(idx, idx ^ bj ^ bk)] += 2.0 * strength;
        }
    }
}

/// Coefficients b_k = 2k - N - 1 of the gradient operator B, even N.
pub fn b_coefficients(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::ChainTooShort { n, min: 2 });
    }
    if n % 2 != 0 {
        return Err(Error::ParityConstraint {
            n,
            requirement: "B is defined for even chain lengths",
        });
    }
    Ok((1..=n).map(|k| (2 * k) as f64 - n as f64 - 1.0).collect())
}

/// The gradient operator B_l = sum_k (2k - N - 1) sigma_l^(k), even N.
pub fn build_b(n: usize) -> Result<WeightedSpinSum> {
    WeightedSpinSum::new(b_coefficients(n)?)
}

/// Expectation of a Hermitian dense operator on a pure state.
pub fn expectation(op: &DenseOperator, state: &PureState) -> Result<f64> {
    op.assert_hermitian()?;
    let image = op.apply_vec(state.amplitudes())?;
    Ok(state.amplitudes().dotc(&image).re)
}

/// Expectation of a Hermitian dense operator on a density matrix.
pub fn expectation_rho(op: &DenseOperator, rho: &DensityMatrix) -> Result<f64> {
    op.assert_hermitian()?;
    if op.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: op.dim(),
        });
    }
    // tr(rho A) = sum_{ij} rho_{ij} A_{ji}.
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..op.dim() {
        for j in 0..op.dim() {
            total += rho.matrix()[(i, j)] * op.matrix()[(j, i)];
        }
    }
    Ok(total.re)
}

/// Variance sum of three Hermitian components on a pure state:
/// `sum_l (<A_l^2> - <A_l>^2)`.
pub fn variance_sum(components: &[DenseOperator; 3], state: &PureState) -> Result<f64> {
    let mut total = 0.0;
    for op in components {
        op.assert_hermitian()?;
        let image = op.apply_vec(state.amplitudes())?;
        let second = image.norm_squared();
        let first = state.amplitudes().dotc(&image).re;
        total += second - first * first;
    }
    Ok(total)
}

/// Two-point correlator <sigma_j . sigma_k> = sum_l <sigma_l^(j) sigma_l^(k)>.
pub fn two_point_correlator(state: &PureState, j: usize, k: usize) -> Result<f64> {
    let n = state.n_qubits();
    if j == 0 || j > n {
        return Err(Error::SiteOutOfRange { site: j, n });
    }
    if k == 0 || k > n {
        return Err(Error::SiteOutOfRange { site: k, n });
    }
    let mut total = 0.0;
    for axis in Axis::ALL {
        total += pauli::expect_pauli_pair(state, axis, j, k)?;
    }
    Ok(total)
}

/// Dense cyclic-shift permutation sending site j to site j+1 (site N to 1);
/// used to check translation invariance of ring Hamiltonians.
pub fn cyclic_shift(n: usize) -> DenseOperator {
    let dim = 1usize << n;
    let mut mat = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
    for idx in 0..dim {
        // New site j+1 holds what site j held; site 1 receives site N's bit.
        let shifted = (idx >> 1) | ((idx & 1) << (n - 1));
        mat[(shifted, idx)] = Complex64::new(1.0, 0.0);
    }
    DenseOperator::new(mat).expect("square by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ground_state, hermitian_eig};

    #[test]
    fn gradient_coefficients_match_positions() {
        let geo = ChainGeometry::new(4, -0.5).unwrap();
        let j = build_j(geo, 8.0).unwrap();
        for (idx, &a) in j.coefficients().iter().enumerate() {
            let x = -0.5 + (idx + 1) as f64;
            let expected = (2.0 * std::f64::consts::PI * x / 8.0).sin();
            assert!((a - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn collective_spin_limit() {
        // d/lambda integer and x0 = lambda/4 makes every coefficient 1.
        let geo = ChainGeometry::new(3, 0.25).unwrap();
        let j = build_j(geo, 1.0).unwrap();
        for &a in j.coefficients() {
            assert!((a - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn build_j_rejects_zero_wavelength() {
        let geo = ChainGeometry::new(4, 0.0).unwrap();
        assert!(build_j(geo, 0.0).is_err());
    }

    #[test]
    fn h1_all_up_energy_is_n() {
        for n in [3usize, 4, 6] {
            let h1 = build_h1(n).unwrap();
            let up = PureState::basis_state(n, 0).unwrap();
            let e = expectation(&h1, &up).unwrap();
            assert!((e - n as f64).abs() < 1e-12, "n={n}: {e}");
        }
    }

    #[test]
    fn h1_rejects_degenerate_ring() {
        assert!(matches!(build_h1(2), Err(Error::ChainTooShort { .. })));
    }

    #[test]
    fn h1_triangle_ground_energy() {
        // Frustrated 3-ring: H1 = (J_c^2 - 9)/2, minimum total spin 1/2 gives
        // J_c^2 = 3 and ground energy -3; cross-checked by diagonalization.
        let h1 = build_h1(3).unwrap();
        let (e0, _) = ground_state(&h1).unwrap();
        assert!((e0 + 3.0).abs() < 1e-10, "ground energy {e0}");
    }

    #[test]
    fn heisenberg_bond_spectrum() {
        // A single sigma.sigma bond has eigenvalues {-3, 1, 1, 1}.
        let mut mat = nalgebra::DMatrix::<f64>::zeros(4, 4);
        add_sigma_dot_sigma(&mut mat, 2, 1, 2, 1.0);
        let op = DenseOperator::from_real(&mat).unwrap();
        let eig = hermitian_eig(&op).unwrap();
        let expected = [-3.0, 1.0, 1.0, 1.0];
        for (got, want) in eig.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn h2_reduces_to_h1_at_zero_alpha() {
        let h1 = build_h1(6).unwrap();
        let h2 = build_h2(6, 0.0).unwrap();
        let dev = (h1.matrix() - h2.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-15);
    }

    #[test]
    fn h2_rejects_short_chain() {
        assert!(matches!(build_h2(4, 0.5), Err(Error::ChainTooShort { .. })));
    }

    #[test]
    fn h2_translation_invariance() {
        let n = 6;
        let t = cyclic_shift(n);
        for alpha in [0.0, 0.37, 1.2] {
            let h2 = build_h2(n, alpha).unwrap();
            let ht = h2.mul(&t).unwrap();
            let th = t.mul(&h2).unwrap();
            let dev = (ht.matrix() - th.matrix())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(dev <= 1e-10, "alpha={alpha}: commutator {dev}");
        }
    }

    #[test]
    fn b_coefficients_n4() {
        assert_eq!(b_coefficients(4).unwrap(), vec![-3.0, -1.0, 1.0, 3.0]);
        assert!(matches!(
            b_coefficients(5),
            Err(Error::ParityConstraint { .. })
        ));
    }

    #[test]
    fn variance_definitions_agree() {
        // Matrix-free variance equals the dense-component variance.
        let geo = ChainGeometry::new(4, -0.5).unwrap();
        let j = build_j(geo, 8.0).unwrap();
        let psi = crate::states::domain_wall_state(4).unwrap();
        let free = j.variance(&psi).unwrap();
        let comps = [
            j.component_matrix(Axis::X),
            j.component_matrix(Axis::Y),
            j.component_matrix(Axis::Z),
        ];
        let dense = variance_sum(&comps, &psi).unwrap();
        assert!((free - dense).abs() < 1e-10);
        let rho = DensityMatrix::from_pure(&psi);
        let mixed = j.variance_rho(&rho).unwrap();
        assert!((free - mixed).abs() < 1e-9);
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let mut m = nalgebra::DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        let op = DenseOperator::new(m).unwrap();
        let psi = PureState::basis_state(1, 0).unwrap();
        assert!(expectation(&op, &psi).is_err());
    }
}
