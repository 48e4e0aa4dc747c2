//! The long-range correlator criterion chi and circulant energy bounds.
//!
//! On a periodic chain of N >= 5 sites, chi collects every two-point
//! correlator whose circular separation is at least two:
//!
//! ```text
//! chi = sum over ordered pairs (j, k), (k - j) mod N in [2, N-2],
//!       of <sigma_j . sigma_k>
//!     = <J_c^2> - 2 <H1> - 3N,
//! ```
//!
//! where J_c is the collective spin and H1 the nearest-neighbor Heisenberg
//! ring. States whose entangled blocks span at most two adjacent sites keep
//! all these correlators classical (products of Bloch vectors), so chi is
//! bounded below by the minimum of a circulant quadratic form:
//! `chi >= N (-1 - 2 cos(2 pi / N))`. Pushing chi below that line certifies
//! entanglement of width at least three.
//!
//! The same circulant machinery yields per-site ground-energy bounds for the
//! J1-J2 ring H2(alpha): `N h_circulant` over product states and
//! `-N h_2prod` over mixtures of pair-plus-singles products, which the
//! alpha-scan uses as entanglement and multipartiteness witnesses.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, DenseOperator, DensityMatrix, PureState};
use crate::spin::{self, build_h1, build_h2, collective_spin, two_point_correlator};
use crate::tol;

/// Largest chain length for which dense chi/H2 matrices are built here.
pub const MAX_DENSE_CHAIN: usize = 12;

fn require_ring(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::ChainTooShort { n, min: 5 });
    }
    Ok(())
}

fn require_dense(n: usize) -> Result<()> {
    require_ring(n)?;
    if n > MAX_DENSE_CHAIN {
        return Err(Error::ChainTooLong {
            n,
            max: MAX_DENSE_CHAIN,
        });
    }
    Ok(())
}

/// chi of a pure state, summed directly from two-point correlators.
///
/// Each unordered pair {j, k} with 2 <= k - j <= N - 2 enters twice, matching
/// the ordered-pair definition; adjacent pairs (including the wrap bond) are
/// excluded. Requires N >= 5.
pub fn chi(state: &PureState) -> Result<f64> {
    let n = state.n_qubits();
    require_ring(n)?;
    let mut total = 0.0;
    for j in 1..=n {
        for k in j + 2..=n {
            if k - j > n - 2 {
                continue; // wrap-around neighbor
            }
            total += 2.0 * two_point_correlator(state, j, k)?;
        }
    }
    Ok(total)
}

/// chi via operator algebra: `<J_c^2> - 2 <H1> - 3N`.
///
/// An independent route to [`chi`] (collective-spin applications plus a dense
/// Heisenberg matrix rather than pairwise correlators); used to cross-check
/// the correlator sum. Dense H1 limits this to small chains.
pub fn chi_operator_route(state: &PureState) -> Result<f64> {
    let n = state.n_qubits();
    require_dense(n)?;
    let j_sq = collective_spin(n)?.square_expectation(state)?;
    let h1 = spin::expectation(&build_h1(n)?, state)?;
    Ok(j_sq - 2.0 * h1 - 3.0 * n as f64)
}

/// Dense chi operator: sum of sigma_j . sigma_k over ordered pairs at
/// circular separation in [2, N-2].
pub fn chi_matrix(n: usize) -> Result<DenseOperator> {
    require_dense(n)?;
    // Distances 2..=N-2 each count every unordered pair once, and the pair
    // at difference d recurs at difference N-d, so the sum is the ordered one.
    let couplings: Vec<(usize, f64)> = (2..=n - 2).map(|dist| (dist, 1.0)).collect();
    spin::heisenberg_ring(n, &couplings)
}

/// chi of a density matrix, via the dense chi operator.
pub fn chi_rho(rho: &DensityMatrix) -> Result<f64> {
    let n = rho.n_qubits();
    require_dense(n)?;
    spin::expectation_rho(&chi_matrix(n)?, rho)
}

/// A symmetric circulant coupling profile c on a ring: site j couples to
/// site j + s with weight c_s, and c_s = c_{N-s}.
///
/// Its eigenvalues `lambda_m = sum_s c_s cos(2 pi m s / N)` control the
/// minimum of the classical quadratic form
/// `sum_j sum_s c_s m_j . m_{j+s}` over Bloch configurations: the form is
/// bounded below by `N min_m lambda_m` (for unit vectors, and for shorter
/// vectors too whenever that minimum is negative), with equality attained by
/// a planar spiral at the minimizing frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpec {
    coeffs: Vec<f64>,
}

impl CirculantSpec {
    /// Builds a profile from the full coefficient vector (c_0, ..., c_{N-1}).
    ///
    /// Requires c_0 = 0 (no self coupling), c_s = c_{N-s}, and N >= 3.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let n = coeffs.len();
        if n < 3 {
            return Err(Error::invalid_parameter(
                "coeffs",
                format!("a circulant profile needs at least 3 sites, got {n}"),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid_parameter("coeffs", "weights must be finite"));
        }
        if coeffs[0] != 0.0 {
            return Err(Error::invalid_parameter(
                "coeffs",
                "self coupling c_0 must be zero",
            ));
        }
        for s in 1..n {
            if (coeffs[s] - coeffs[n - s]).abs() > 1e-12 {
                return Err(Error::invalid_parameter(
                    "coeffs",
                    format!("profile is not symmetric: c_{s} != c_{}", n - s),
                ));
            }
        }
        Ok(CirculantSpec { coeffs })
    }

    /// Ring size.
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient vector (c_0, ..., c_{N-1}).
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Eigenvalue at frequency m: `sum_s c_s cos(2 pi m s / N)`.
    pub fn eigenvalue(&self, m: usize) -> f64 {
        let n = self.n() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| c * (2.0 * std::f64::consts::PI * m as f64 * s as f64 / n).cos())
            .sum()
    }

    /// All eigenvalues, indexed by frequency m = 0..N-1.
    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.n()).map(|m| self.eigenvalue(m)).collect()
    }

    /// The minimizing frequency and its eigenvalue (smallest m on ties).
    pub fn min_eigenvalue(&self) -> (usize, f64) {
        let mut best = (0, self.eigenvalue(0));
        for m in 1..self.n() {
            let value = self.eigenvalue(m);
            if value < best.1 {
                best = (m, value);
            }
        }
        best
    }

    /// Minimum of the classical form over unit-Bloch configurations:
    /// `N min_m lambda_m`.
    pub fn classical_min(&self) -> f64 {
        self.n() as f64 * self.min_eigenvalue().1
    }

    /// The quantum counterpart of the profile:
    /// `sum_j sum_{s >= 1} c_s sigma_j . sigma_{j+s}` (every ordered pair,
    /// like the classical form). Dense; small chains only.
    pub fn operator(&self) -> Result<DenseOperator> {
        let n = self.n();
        if n > MAX_DENSE_CHAIN {
            return Err(Error::ChainTooLong {
                n,
                max: MAX_DENSE_CHAIN,
            });
        }
        let couplings: Vec<(usize, f64)> =
            (1..n).map(|s| (s, self.coeffs[s])).collect();
        spin::heisenberg_ring(n, &couplings)
    }
}

/// The circulant profile behind chi: unit weight at separations 2..=N-2.
///
/// Eigenvalues are N - 3 at m = 0 and `-1 - 2 cos(2 pi m / N)` otherwise.
pub fn chi_spec(n: usize) -> Result<CirculantSpec> {
    require_ring(n)?;
    let mut coeffs = vec![1.0; n];
    coeffs[0] = 0.0;
    coeffs[1] = 0.0;
    coeffs[n - 1] = 0.0;
    CirculantSpec::new(coeffs)
}

/// Lower bound on chi over states whose entangled blocks span at most two
/// adjacent sites: `N (-1 - 2 cos(2 pi / N))`, a negative number, attained
/// by the frequency-1 Bloch spiral.
pub fn chi_classical_bound(n: usize) -> Result<f64> {
    Ok(chi_spec(n)?.classical_min())
}

/// The circulant profile whose classical form reproduces `<H2(alpha)>` on
/// product states (weight 1/2 per ordered direction of each bond).
pub fn h2_circulant_spec(n: usize, alpha: f64) -> Result<CirculantSpec> {
    require_ring(n)?;
    if !alpha.is_finite() {
        return Err(Error::invalid_parameter("alpha", "must be finite"));
    }
    let mut coeffs = vec![0.0; n];
    coeffs[1] = 0.5;
    coeffs[n - 1] = 0.5;
    coeffs[2] += 0.5 * alpha;
    coeffs[n - 2] += 0.5 * alpha;
    CirculantSpec::new(coeffs)
}

/// Per-site ground energy of H2(alpha) over product states:
/// `min_m [cos(2 pi m / N) + alpha cos(4 pi m / N)]`.
///
/// `<H2>` on any separable state is at least `N * h_circulant`.
pub fn h_circulant(n: usize, alpha: f64) -> Result<f64> {
    Ok(h2_circulant_spec(n, alpha)?.classical_min() / n as f64)
}

/// Extremal per-block energies of -H2(alpha) for singles and adjacent pairs:
/// `(1 + alpha, 2 (1 + alpha) + 1 / (1 + 2 alpha))`. Requires alpha > -1/2.
pub fn two_producible_block_values(alpha: f64) -> Result<(f64, f64)> {
    if !alpha.is_finite() || alpha <= -0.5 {
        return Err(Error::invalid_parameter(
            "alpha",
            format!("the pair-block bound needs alpha > -1/2, got {alpha}"),
        ));
    }
    let single = 1.0 + alpha;
    let double = 2.0 * (1.0 + alpha) + 1.0 / (1.0 + 2.0 * alpha);
    Ok((single, double))
}

/// Per-site bound for two-producible states: mixtures of products of
/// adjacent-pair states and singles satisfy `<H2(alpha)> >= -N h_2prod`.
///
/// Equals `1 + alpha + 1 / (2 + 4 alpha)`; defined for alpha > -1/2.
pub fn h_2prod(alpha: f64) -> Result<f64> {
    let (single, double) = two_producible_block_values(alpha)?;
    Ok(single.max(0.5 * double))
}

/// One grid point of the alpha scan of the J1-J2 ring.
#[derive(Debug, Clone)]
pub struct AlphaScanRow {
    pub alpha: f64,
    /// Ground energy of H2(alpha).
    pub energy: f64,
    /// Dimension of the (numerically) degenerate ground space.
    pub degeneracy: usize,
    /// chi of the first ground eigenvector as returned by the solver.
    pub chi_raw: f64,
    /// chi averaged over the ground-space projector; basis independent and
    /// the value reported downstream.
    pub chi_symmetrized: f64,
    /// Separable-state energy bound `N h_circulant`.
    pub bound_circulant: f64,
    /// Two-producible energy bound `-N h_2prod`.
    pub bound_2prod: f64,
    /// Width-2 chi bound `N (-1 - 2 cos(2 pi / N))`.
    pub bound_chi_classical: f64,
    /// Ground energy below the separable bound: some entanglement.
    pub flag_ent: bool,
    /// Ground energy below the two-producible bound: a block of >= 3 sites.
    pub flag_multipartite: bool,
    /// Symmetrized chi below the width-2 bound: entanglement width >= 3.
    pub flag_width3: bool,
}

/// Diagonalizes H2(alpha) on each grid point and evaluates chi and the energy
/// and chi bounds on the ground space.
///
/// Degeneracy is resolved with a relative gap threshold, and chi is averaged
/// over the detected ground space so the reported value does not depend on
/// which basis of a degenerate multiplet the eigensolver happens to return.
/// Dense diagonalization: N <= 12, and cost grows steeply with N.
pub fn scan_alpha(n: usize, alphas: &[f64]) -> Result<Vec<AlphaScanRow>> {
    require_dense(n)?;
    if alphas.is_empty() {
        return Err(Error::invalid_parameter("alphas", "grid is empty"));
    }
    for &alpha in alphas {
        // Validate eagerly so a bad grid fails before, not during, the scan.
        h_2prod(alpha)?;
    }
    let chi_bound = chi_classical_bound(n)?;
    alphas
        .par_iter()
        .map(|&alpha| {
            let h2 = build_h2(n, alpha)?;
            let eig = hermitian_eig(&h2)?;
            let energy = eig.values[0];
            let gap_tol = tol::DEGENERACY_REL_TOL * (1.0 + energy.abs());
            let degeneracy = eig
                .values
                .iter()
                .take_while(|&&v| v - energy <= gap_tol)
                .count();
            let mut chi_values = Vec::with_capacity(degeneracy);
            for i in 0..degeneracy {
                let column = eig.vectors.column(i).into_owned();
                let state = PureState::normalized(n, column)?;
                chi_values.push(chi(&state)?);
            }
            let chi_raw = chi_values[0];
            let chi_symmetrized = chi_values.iter().sum::<f64>() / degeneracy as f64;
            let bound_circulant = n as f64 * h_circulant(n, alpha)?;
            let bound_2prod = -(n as f64) * h_2prod(alpha)?;
            Ok(AlphaScanRow {
                alpha,
                energy,
                degeneracy,
                chi_raw,
                chi_symmetrized,
                bound_circulant,
                bound_2prod,
                bound_chi_classical: chi_bound,
                flag_ent: energy < bound_circulant - tol::CRITERION_TOL,
                flag_multipartite: energy < bound_2prod - tol::CRITERION_TOL,
                flag_width3: chi_symmetrized < chi_bound - tol::CRITERION_TOL,
            })
        })
        .collect()
}

/// A discontinuity in chi between adjacent scan points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiJump {
    pub alpha_before: f64,
    pub alpha_after: f64,
    /// chi_symmetrized(after) - chi_symmetrized(before).
    pub delta: f64,
}

/// Default jump threshold for a chain of n sites: 0.1 per site.
pub fn default_jump_threshold(n: usize) -> f64 {
    0.1 * n as f64
}

/// Flags grid steps where the symmetrized chi moves by more than `threshold`
/// (level crossings of the ground space show up as such jumps).
pub fn detect_jumps(rows: &[AlphaScanRow], threshold: f64) -> Vec<ChiJump> {
    rows.windows(2)
        .filter_map(|pair| {
            let delta = pair[1].chi_symmetrized - pair[0].chi_symmetrized;
            (delta.abs() > threshold).then_some(ChiJump {
                alpha_before: pair[0].alpha,
                alpha_after: pair[1].alpha,
                delta,
            })
        })
        .collect()
}
