//! The pair-variance criterion: how small the gradient-observable variance
//! can get when entanglement is restricted to pairs of bounded width.
//!
//! For a pair of sites with coefficients (a_j, a_k) the two-particle variance
//! on a two-qubit state psi is
//!
//! ```text
//! V = 3 (a_j^2 + a_k^2) - [ |a_j <s_j> + a_k <s_k>|^2 - 2 a_j a_k <s_j . s_k> ]
//! ```
//!
//! with s the Pauli vector. Minimized over psi, V depends only on the larger
//! coefficient and the ratio eps = a_min / a_maj in [-1, 1]; the minimizer
//! switches character at eps0 = 2 - sqrt(3), giving the closed form
//!
//! ```text
//! V_min = a_maj^2 (2 + 2 eps^2 - 4 eps^2 / (1 - eps)^2)   for eps <= eps0,
//! V_min = 3 a_maj^2 (1 - eps)^2                            for eps >= eps0.
//! ```
//!
//! Single sites contribute 2 a_j^2. Summing optimally over the chain yields
//! width-resolved lower bounds: a cheap per-site half-sum bound and the exact
//! optimum over all pairings with span at most w (pairs (j, k) with
//! k - j + 1 <= w, crossing pairings included).

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::PureState;
use crate::pauli::{self, Axis};
use crate::report::BoundReport;
use crate::spin::{build_j, ChainGeometry, GradientObservable};

/// Ratio parameterization of a coefficient pair: the larger-magnitude
/// coefficient and the signed ratio of the smaller to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonPair {
    /// Coefficient of larger magnitude.
    pub a_major: f64,
    /// Ratio a_minor / a_major, in [-1, 1]. Zero when both coefficients vanish.
    pub epsilon: f64,
}

impl EpsilonPair {
    /// The kink ratio separating the two branches of the closed form.
    pub fn epsilon0() -> f64 {
        2.0 - 3.0_f64.sqrt()
    }

    /// Orders a coefficient pair by magnitude.
    pub fn from_coefficients(a_j: f64, a_k: f64) -> Self {
        let (major, minor) = if a_j.abs() >= a_k.abs() {
            (a_j, a_k)
        } else {
            (a_k, a_j)
        };
        if major == 0.0 {
            EpsilonPair {
                a_major: 0.0,
                epsilon: 0.0,
            }
        } else {
            EpsilonPair {
                a_major: major,
                epsilon: minor / major,
            }
        }
    }
}

/// Two-particle variance of the pair observable with coefficients (a_j, a_k)
/// on a two-qubit pure state (site j first).
pub fn two_particle_variance(a_j: f64, a_k: f64, state: &PureState) -> Result<f64> {
    if state.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.dim(),
        });
    }
    let mut dot = 0.0; // <s_j . s_k>
    let mut mean_sq = 0.0; // |a_j <s_j> + a_k <s_k>|^2
    for axis in Axis::ALL {
        let mj = pauli::expect_pauli(state, axis, 1)?;
        let mk = pauli::expect_pauli(state, axis, 2)?;
        dot += pauli::expect_pauli_pair(state, axis, 1, 2)?;
        let component = a_j * mj + a_k * mk;
        mean_sq += component * component;
    }
    Ok(3.0 * (a_j * a_j + a_k * a_k) - (mean_sq - 2.0 * a_j * a_k * dot))
}

/// Closed-form minimum of the two-particle variance over all two-qubit states.
pub fn min_two_particle_variance(a_j: f64, a_k: f64) -> f64 {
    let pair = EpsilonPair::from_coefficients(a_j, a_k);
    let s = pair.a_major * pair.a_major;
    if s == 0.0 {
        return 0.0;
    }
    let eps = pair.epsilon;
    if eps <= EpsilonPair::epsilon0() {
        let ratio = eps / (1.0 - eps);
        s * (2.0 + 2.0 * eps * eps - 4.0 * ratio * ratio)
    } else {
        let d = 1.0 - eps;
        3.0 * s * d * d
    }
}

// Objective workspace for the numerical pair-variance minimizer.
struct PairObjective {
    /// Pair components x[l] = a s_l (x) 1 + b 1 (x) s_l, one per axis.
    x: [Matrix4<Complex64>; 3],
    /// Mean-free quadratic part q = sum_l x[l]^2.
    q: Matrix4<Complex64>,
    /// Magnitude reference for stopping tests.
    scale: f64,
}

impl PairObjective {
    fn new(a: f64, b: f64) -> Self {
        let eye = nalgebra::Matrix2::<Complex64>::identity();
        let mut x = [Matrix4::zeros(); 3];
        let mut q = Matrix4::zeros();
        for (l, axis) in Axis::ALL.into_iter().enumerate() {
            let p = pauli::pauli_matrix(axis);
            x[l] = p.kronecker(&eye).scale(a) + eye.kronecker(&p).scale(b);
            q += x[l] * x[l];
        }
        let scale = 1.0 + a * a + b * b;
        PairObjective { x, q, scale }
    }

    /// Variance at a unit vector psi: <q> - sum_l <x_l>^2.
    fn value(&self, psi: &Vector4<Complex64>) -> f64 {
        let mut value = psi.dotc(&(self.q * psi)).re;
        for xl in &self.x {
            let mean = psi.dotc(&(xl * psi)).re;
            value -= mean * mean;
        }
        value
    }
}

/// One self-consistent refinement from a given start. Freezing the means m_l
/// turns the variance into the expectation of the Hermitian surrogate
/// sum_l (x_l - m_l)^2, which touches the variance at m_l = <x_l> and bounds
/// it from above elsewhere; taking the exact ground state of the surrogate
/// and refreshing the means therefore lowers the variance monotonically.
/// Returns the locally minimal variance.
fn refine_from(objective: &PairObjective, start: Vector4<Complex64>) -> f64 {
    let mut psi = start.normalize();
    let mut value = objective.value(&psi);
    for _ in 0..200 {
        let mut surrogate = objective.q;
        for xl in &objective.x {
            let mean = psi.dotc(&(xl * psi)).re;
            // The constant m^2 shift is dropped: it moves every eigenvalue
            // equally and leaves the ground state unchanged.
            surrogate -= xl.scale(2.0 * mean);
        }
        let eig = nalgebra::SymmetricEigen::new(surrogate);
        let mut ground = 0;
        for i in 1..4 {
            if eig.eigenvalues[i] < eig.eigenvalues[ground] {
                ground = i;
            }
        }
        psi = eig.eigenvectors.column(ground).into_owned().normalize();
        let refreshed = objective.value(&psi);
        if value - refreshed <= 1e-13 * objective.scale {
            return refreshed.min(value);
        }
        value = refreshed;
    }
    value
}

/// Numerical oracle for [`min_two_particle_variance`]: best of `n_starts`
/// self-consistent refinements from Haar-random two-qubit starts.
///
/// Deterministic for a given seed; independent of the closed form. Callers
/// must provide at least 100 starts.
pub fn brute_force_min_two_particle(a_j: f64, a_k: f64, n_starts: usize, seed: u64) -> f64 {
    assert!(n_starts >= 100, "the oracle needs at least 100 starts");
    let objective = PairObjective::new(a_j, a_k);
    (0..n_starts)
        .into_par_iter()
        .map(|start| {
            let mut rng = crate::random::stream_rng(seed, start as u64);
            let init = Vector4::from_fn(|_, _| crate::random::complex_normal(&mut rng));
            refine_from(&objective, init)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

fn validate_width(n: usize, w: usize) -> Result<()> {
    if w == 0 || w > n {
        return Err(Error::invalid_parameter(
            "w",
            format!("width must satisfy 1 <= w <= {n}, got {w}"),
        ));
    }
    Ok(())
}

/// Per-site half-sum lower bound on the gradient variance over width-w states.
///
/// Each site is charged half of the best pair variance it could join within
/// the window, capped at 4 a_j^2 so that sites which are better off single
/// (contributing 2 a_j^2 in full) are never over-charged; the cap is what
/// keeps this a true lower bound for every partition into pairs and singles,
/// and makes w = 1 reduce to sum_j 2 a_j^2 (empty pair window).
pub fn width_bound_simple(geometry: ChainGeometry, lambda_over_d: f64, w: usize) -> Result<f64> {
    let n = geometry.n();
    validate_width(n, w)?;
    let observable = build_j(geometry, lambda_over_d)?;
    let a = observable.coefficients();
    let mut total = 0.0;
    for j in 0..n {
        let mut best = 4.0 * a[j] * a[j];
        let lo = j.saturating_sub(w - 1);
        let hi = (j + w - 1).min(n - 1);
        for k in lo..=hi {
            if k != j {
                best = best.min(min_two_particle_variance(a[j], a[k]));
            }
        }
        total += 0.5 * best;
    }
    Ok(total)
}

/// Exact minimum cost over all partitions of 1..=n into pairs with span <= w
/// and singles. `pair_cost(j, k)` uses 0-based site indices j < k.
///
/// Dynamic program over a sliding window mask of claimed sites; crossing
/// pairings are covered exactly. State space n * 2^w.
fn optimal_partition_cost(
    n: usize,
    w: usize,
    pair_cost: &dyn Fn(usize, usize) -> f64,
    single_cost: &dyn Fn(usize) -> f64,
) -> f64 {
    let mask_bits = w; // bit t of the mask: site j + t is already claimed
    let size = 1usize << mask_bits;
    let mut layer = vec![f64::INFINITY; size];
    let mut next = vec![f64::INFINITY; size];
    layer[0] = 0.0;
    for j in 0..n {
        next.iter_mut().for_each(|x| *x = f64::INFINITY);
        for (mask, &cost) in layer.iter().enumerate() {
            if !cost.is_finite() {
                continue;
            }
            if mask & 1 != 0 {
                // Site already claimed by an earlier pair.
                let to = mask >> 1;
                if cost < next[to] {
                    next[to] = cost;
                }
                continue;
            }
            // Leave the site single.
            let single_total = cost + single_cost(j);
            let to = mask >> 1;
            if single_total < next[to] {
                next[to] = single_total;
            }
            // Pair with a site inside the window.
            for delta in 1..w {
                let k = j + delta;
                if k >= n {
                    break;
                }
                if mask & (1 << delta) != 0 {
                    continue;
                }
                let pair_total = cost + pair_cost(j, k);
                let to = (mask | (1 << delta)) >> 1;
                if pair_total < next[to] {
                    next[to] = pair_total;
                }
            }
        }
        std::mem::swap(&mut layer, &mut next);
    }
    layer[0]
}

/// Exhaustive minimum over all partitions into span-limited pairs and singles
/// (test oracle; exponential, keep n small).
#[cfg(test)]
fn exhaustive_partition_cost(
    n: usize,
    w: usize,
    pair_cost: &dyn Fn(usize, usize) -> f64,
    single_cost: &dyn Fn(usize) -> f64,
) -> f64 {
    fn recurse(
        claimed: &mut Vec<bool>,
        from: usize,
        w: usize,
        pair_cost: &dyn Fn(usize, usize) -> f64,
        single_cost: &dyn Fn(usize) -> f64,
    ) -> f64 {
        let n = claimed.len();
        let Some(j) = (from..n).find(|&s| !claimed[s]) else {
            return 0.0;
        };
        claimed[j] = true;
        // Single.
        let mut best = single_cost(j) + recurse(claimed, j + 1, w, pair_cost, single_cost);
        // Pair with any free site within the span.
        for k in j + 1..n.min(j + w) {
            if claimed[k] {
                continue;
            }
            claimed[k] = true;
            let cost = pair_cost(j, k) + recurse(claimed, j + 1, w, pair_cost, single_cost);
            claimed[k] = false;
            if cost < best {
                best = cost;
            }
        }
        claimed[j] = false;
        best
    }
    let mut claimed = vec![false; n];
    recurse(&mut claimed, 0, w, pair_cost, single_cost)
}

/// Exact lower bound on the gradient variance over width-w pairing states:
/// the optimal partition of the chain into pairs of span <= w (crossing
/// allowed) and singles. Supported for chains up to 20 sites.
pub fn width_bound_matching(geometry: ChainGeometry, lambda_over_d: f64, w: usize) -> Result<f64> {
    let n = geometry.n();
    if n > 20 {
        return Err(Error::ChainTooLong { n, max: 20 });
    }
    validate_width(n, w)?;
    let observable = build_j(geometry, lambda_over_d)?;
    let a = observable.coefficients().to_vec();
    let pair_cost = move |j: usize, k: usize| min_two_particle_variance(a[j], a[k]);
    let a2 = observable.coefficients().to_vec();
    let single_cost = move |j: usize| 2.0 * a2[j] * a2[j];
    Ok(optimal_partition_cost(n, w, &pair_cost, &single_cost))
}

/// Measures the gradient variance of a state and compares it against the
/// width-w bound (the exact matching bound when the chain allows it, the
/// half-sum bound otherwise). A violation certifies that no width-w pairing
/// of the chain reproduces so small a variance.
pub fn detect_width_violation(
    state: &PureState,
    geometry: ChainGeometry,
    lambda_over_d: f64,
    w: usize,
) -> Result<BoundReport> {
    if state.n_qubits() != geometry.n() {
        return Err(Error::DimensionMismatch {
            expected: geometry.n(),
            found: state.n_qubits(),
        });
    }
    let observable: GradientObservable = build_j(geometry, lambda_over_d)?;
    let observed = observable.variance(state)?;
    let bound = if geometry.n() <= 20 {
        width_bound_matching(geometry, lambda_over_d, w)?
    } else {
        width_bound_simple(geometry, lambda_over_d, w)?
    };
    Ok(BoundReport::evaluate(
        format!("variance_width_{w}"),
        vec![
            ("n".into(), geometry.n() as f64),
            ("x0".into(), geometry.x0()),
            ("lambda_over_d".into(), lambda_over_d),
            ("w".into(), w as f64),
        ],
        bound,
        observed,
    ))
}

/// One row of the wavelength scan: the gradient variance of each reference
/// state and the requested width bounds at a single lambda/d.
#[derive(Debug, Clone)]
pub struct VarianceScanRow {
    pub lambda_over_d: f64,
    /// Variances in the order of the states passed to the scan.
    pub variances: Vec<f64>,
    /// Half-sum bounds, one per entry of `widths`.
    pub bounds_simple: Vec<f64>,
    /// Matching bounds, one per entry of `matching_widths`.
    pub bounds_matching: Vec<f64>,
}

/// Scans lambda/d over a grid, evaluating named states once per wavelength.
///
/// States are reused across the grid (the state itself does not depend on
/// lambda), with per-state correlator tables so each grid point costs O(N^2).
pub fn scan_variance(
    geometry: ChainGeometry,
    lambda_grid: &[f64],
    states: &[(String, PureState)],
    widths: &[usize],
    matching_widths: &[usize],
) -> Result<Vec<VarianceScanRow>> {
    if lambda_grid.is_empty() {
        return Err(Error::invalid_parameter("lambda_grid", "grid is empty"));
    }
    for &lambda in lambda_grid {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::invalid_parameter(
                "lambda_grid",
                "wavelength ratios must be finite and nonzero",
            ));
        }
    }
    for w in widths.iter().chain(matching_widths) {
        validate_width(geometry.n(), *w)?;
    }
    let n = geometry.n();
    for (name, state) in states {
        if state.n_qubits() != n {
            return Err(Error::invalid_parameter(
                "states",
                format!("state `{name}` has {} qubits, chain has {n}", state.n_qubits()),
            ));
        }
    }
    // Correlator tables: per state, <sigma_l^j> and <sigma_l^j sigma_l^k>.
    struct Table {
        mean: [Vec<f64>; 3],
        corr: [Vec<f64>; 3], // row-major n x n, diagonal = 1
    }
    let tables: Vec<Table> = states
        .par_iter()
        .map(|(_, state)| {
            let mut mean = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
            let mut corr = [
                vec![1.0; n * n],
                vec![1.0; n * n],
                vec![1.0; n * n],
            ];
            for (l, axis) in Axis::ALL.into_iter().enumerate() {
                for j in 0..n {
                    mean[l][j] = pauli::expect_pauli(state, axis, j + 1).expect("valid site");
                }
                for j in 0..n {
                    for k in j + 1..n {
                        let value = pauli::expect_pauli_pair(state, axis, j + 1, k + 1)
                            .expect("valid sites");
                        corr[l][j * n + k] = value;
                        corr[l][k * n + j] = value;
                    }
                }
            }
            Table { mean, corr }
        })
        .collect();

    let rows: Vec<VarianceScanRow> = lambda_grid
        .par_iter()
        .map(|&lambda| {
            let a: Vec<f64> = (1..=n)
                .map(|j| (2.0 * std::f64::consts::PI * geometry.position(j) / lambda).sin())
                .collect();
            let variances = tables
                .iter()
                .map(|table| {
                    let mut total = 0.0;
                    for l in 0..3 {
                        let mut second = 0.0;
                        let mut first = 0.0;
                        for j in 0..n {
                            first += a[j] * table.mean[l][j];
                            for k in 0..n {
                                second += a[j] * a[k] * table.corr[l][j * n + k];
                            }
                        }
                        total += second - first * first;
                    }
                    total
                })
                .collect();
            let bounds_simple = widths
                .iter()
                .map(|&w| width_bound_simple(geometry, lambda, w).expect("validated"))
                .collect();
            let bounds_matching = matching_widths
                .iter()
                .map(|&w| width_bound_matching(geometry, lambda, w).expect("validated"))
                .collect();
            VarianceScanRow {
                lambda_over_d: lambda,
                variances,
                bounds_simple,
                bounds_matching,
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use crate::tol;

    #[test]
    fn closed_form_reference_points() {
        // Equal coefficients: a perfect singlet zeroes the variance.
        assert!(min_two_particle_variance(1.0, 1.0).abs() < 1e-15);
        // Opposite coefficients: best value 3 a^2.
        assert!((min_two_particle_variance(1.0, -1.0) - 3.0).abs() < 1e-12);
        // One dead site: 2 a^2.
        assert!((min_two_particle_variance(1.0, 0.0) - 2.0).abs() < 1e-12);
        assert!((min_two_particle_variance(0.0, 0.0)).abs() < 1e-15);
        // Symmetry under swap and joint sign flip.
        for (a, b) in [(0.8, 0.3), (-0.6, 0.9), (0.5, -0.5)] {
            let v = min_two_particle_variance(a, b);
            assert!((v - min_two_particle_variance(b, a)).abs() < 1e-14);
            assert!((v - min_two_particle_variance(-a, -b)).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_is_continuous_at_the_kink() {
        let eps0 = EpsilonPair::epsilon0();
        let below = min_two_particle_variance(1.0, eps0 - 1e-9);
        let above = min_two_particle_variance(1.0, eps0 + 1e-9);
        assert!((below - above).abs() < 1e-7);
        // Exact value at the kink: 12 - 6 sqrt(3).
        let at = min_two_particle_variance(1.0, eps0);
        assert!((at - (12.0 - 6.0 * 3.0_f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn closed_form_continuity_on_grid() {
        // Max jump over an epsilon grid of step 1e-4 stays below 1e-3 * a^2.
        let steps = 20_000usize;
        let mut previous = min_two_particle_variance(1.0, -1.0);
        let mut max_jump = 0.0f64;
        for i in 1..=steps {
            let eps = -1.0 + 2.0 * i as f64 / steps as f64;
            let value = min_two_particle_variance(1.0, eps);
            max_jump = max_jump.max((value - previous).abs());
            previous = value;
        }
        assert!(max_jump < 1e-3, "max jump {max_jump}");
    }

    #[test]
    fn singlet_matches_variance_formula() {
        let config = states::PairingConfiguration::new(2, vec![(1, 2)], vec![]).unwrap();
        let psi = states::singlet_pairing_state(&config).unwrap();
        for (a, b) in [(1.0, 1.0), (0.7, -0.2), (0.0, 0.9)] {
            let v = two_particle_variance(a, b, &psi).unwrap();
            let expected = 3.0 * (a - b) * (a - b);
            assert!((v - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_variance_floor() {
        // On product states the variance is 3(a^2+b^2) - a^2|m|^2 - b^2|m'|^2,
        // minimized at 2(a^2 + b^2).
        let psi = states::product_state(&[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]).unwrap();
        let (a, b) = (0.6, 0.8);
        let v = two_particle_variance(a, b, &psi).unwrap();
        assert!((v - 2.0 * (a * a + b * b)).abs() < 1e-12);
    }

    #[test]
    fn oracle_agrees_with_closed_form_spot_checks() {
        for (idx, eps) in [-1.0, -0.4, 0.0, 0.26, 0.5, 1.0].into_iter().enumerate() {
            let closed = min_two_particle_variance(1.0, eps);
            let oracle = brute_force_min_two_particle(1.0, eps, 120, 1000 + idx as u64);
            assert!(
                (closed - oracle).abs() < tol::PAIR_ORACLE_TOL,
                "eps {eps}: closed {closed} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn matching_dp_equals_exhaustive_enumeration() {
        use rand::Rng;
        let mut rng = crate::random::seeded_rng(42);
        for n in [4usize, 6, 8, 9] {
            for w in [1usize, 2, 3, n] {
                let coeffs: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
                let c1 = coeffs.clone();
                let pair = move |j: usize, k: usize| min_two_particle_variance(c1[j], c1[k]);
                let c2 = coeffs.clone();
                let single = move |j: usize| 2.0 * c2[j] * c2[j];
                let dp = optimal_partition_cost(n, w, &pair, &single);
                let brute = exhaustive_partition_cost(n, w, &pair, &single);
                assert!(
                    (dp - brute).abs() < 1e-12,
                    "n={n} w={w}: dp {dp} vs brute {brute}"
                );
            }
        }
    }

    #[test]
    fn matching_dp_covers_crossing_pairings() {
        // Costs rigged so the crossing pairing (0,2),(1,3) is uniquely optimal.
        let pair = |j: usize, k: usize| match (j, k) {
            (0, 2) | (1, 3) => 0.0,
            _ => 10.0,
        };
        let single = |_: usize| 5.0;
        let best = optimal_partition_cost(4, 3, &pair, &single);
        assert!(best.abs() < 1e-12, "crossing optimum missed: {best}");
    }

    #[test]
    fn simple_bound_below_matching_bound() {
        let geometry = ChainGeometry::new(12, -0.5).unwrap();
        for lambda in [3.0, 8.0, 24.0] {
            for w in [1usize, 2, 3, 4] {
                let simple = width_bound_simple(geometry, lambda, w).unwrap();
                let matching = width_bound_matching(geometry, lambda, w).unwrap();
                assert!(
                    matching >= simple - 1e-9,
                    "lambda {lambda} w {w}: simple {simple} > matching {matching}"
                );
            }
        }
    }

    #[test]
    fn matching_bound_monotone_in_width() {
        let geometry = ChainGeometry::new(10, -0.5).unwrap();
        for lambda in [5.0, 20.0] {
            let mut previous = f64::INFINITY;
            for w in 1..=6 {
                let bound = width_bound_matching(geometry, lambda, w).unwrap();
                assert!(
                    bound <= previous + 1e-12,
                    "w {w}: {bound} rose above {previous}"
                );
                previous = bound;
            }
        }
    }

    #[test]
    fn width_one_bound_is_full_product_floor() {
        let geometry = ChainGeometry::new(6, -0.5).unwrap();
        let lambda = 12.0;
        let j = build_j(geometry, lambda).unwrap();
        let expected: f64 = j.coefficients().iter().map(|a| 2.0 * a * a).sum();
        let simple = width_bound_simple(geometry, lambda, 1).unwrap();
        let matching = width_bound_matching(geometry, lambda, 1).unwrap();
        assert!((simple - expected).abs() < 1e-12);
        assert!((matching - expected).abs() < 1e-12);
    }

    #[test]
    fn width_validation() {
        let geometry = ChainGeometry::new(6, -0.5).unwrap();
        assert!(width_bound_simple(geometry, 12.0, 0).is_err());
        assert!(width_bound_simple(geometry, 12.0, 7).is_err());
        let long = ChainGeometry::new(21, -0.5).unwrap();
        assert!(matches!(
            width_bound_matching(long, 12.0, 2),
            Err(Error::ChainTooLong { .. })
        ));
    }

    #[test]
    fn right_neighbor_variance_matches_closed_form() {
        // At lambda = 2 N d, x0 = -d/2 the right-neighbor singlet chain gives
        // (3/2) N (1 - cos(pi/N)).
        for n in [4usize, 8] {
            let geometry = ChainGeometry::new(n, -0.5).unwrap();
            let lambda = 2.0 * n as f64;
            let psi = states::singlet_pairing_state(&states::right_neighbor(n).unwrap()).unwrap();
            let j = build_j(geometry, lambda).unwrap();
            let variance = j.variance(&psi).unwrap();
            let expected = 1.5 * n as f64 * (1.0 - (std::f64::consts::PI / n as f64).cos());
            assert!(
                (variance - expected).abs() < 1e-9,
                "n={n}: {variance} vs {expected}"
            );
        }
    }

    #[test]
    fn scan_variance_shapes_and_values() {
        let n = 8;
        let geometry = ChainGeometry::new(n, -0.5).unwrap();
        let hug = states::singlet_pairing_state(&states::hugging(n).unwrap()).unwrap();
        let rn = states::singlet_pairing_state(&states::right_neighbor(n).unwrap()).unwrap();
        let grid = [4.0, 16.0];
        let rows = scan_variance(
            geometry,
            &grid,
            &[("hugging".into(), hug.clone()), ("right_neighbor".into(), rn.clone())],
            &[1, 2],
            &[2],
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        for (row, &lambda) in rows.iter().zip(grid.iter()) {
            assert_eq!(row.variances.len(), 2);
            // Cross-check the table-based variance against the direct one.
            let j = build_j(geometry, lambda).unwrap();
            let direct = j.variance(&hug).unwrap();
            assert!((row.variances[0] - direct).abs() < 1e-9);
            let direct_rn = j.variance(&rn).unwrap();
            assert!((row.variances[1] - direct_rn).abs() < 1e-9);
        }
    }

    #[test]
    fn hugging_violates_w2_bound_at_matched_wavelength() {
        // At lambda = 2 N d the hugging chain reaches zero variance, strictly
        // below any width-2 bound.
        let n = 8;
        let geometry = ChainGeometry::new(n, -0.5).unwrap();
        let psi = states::singlet_pairing_state(&states::hugging(n).unwrap()).unwrap();
        let report = detect_width_violation(&psi, geometry, 2.0 * n as f64, 2).unwrap();
        assert!(report.violated);
        assert!(report.observed.abs() < 1e-9);
        assert!(report.bound > 0.1);
    }
}
