//! The second-moment pair (<J^2>, <B^2>) and its certified Pareto frontier.
//!
//! J is the collective spin and B the linearly weighted spin sum with site
//! coefficients b_k = 2k - N - 1. Large <B^2> at small <J^2> requires
//! entanglement between distant sites: products of singlets on adjacent
//! sites reach <B^2> = 6N at <J^2> = 0, while the hugging pairing reaches
//! 2N (N^2 - 1) there.
//!
//! Upper lines `<B^2> <= m <J^2> + a` valid for all states separable across
//! a family of contiguous cuts are certified with the partial-transpose
//! relaxation of [`crate::sdp`]: for the objective `C = m J^2 - B^2`,
//!
//! ```text
//! a(m) = -min tr(C rho)  over PPT-feasible rho,
//! ```
//!
//! and the solver's dual bound turns each scan point into a rigorous
//! certificate. As a pointwise maximum of affine functions of m, a(m) is
//! convex and nonincreasing, so the slope at which a target intercept is
//! crossed can be bisected.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, DensityMatrix, PureState};
use crate::report::BoundReport;
use crate::sdp::{cut_partitions, solve_sdp, SdpOptions, SdpProblem, SdpSolution};
use crate::spin::{self, build_b, collective_spin};
use crate::states::PairingConfiguration;
use crate::tol;

/// <J^2> of a pure state, matrix-free.
pub fn j_squared(state: &PureState) -> Result<f64> {
    collective_spin(state.n_qubits())?.square_expectation(state)
}

/// <B^2> of a pure state, matrix-free. Even chains only.
pub fn b_squared(state: &PureState) -> Result<f64> {
    build_b(state.n_qubits())?.square_expectation(state)
}

/// Both second moments of a pure state.
pub fn moment_pair(state: &PureState) -> Result<(f64, f64)> {
    Ok((j_squared(state)?, b_squared(state)?))
}

/// Dense J^2 observable.
pub fn j_squared_operator(n: usize) -> Result<DenseOperator> {
    Ok(collective_spin(n)?.square_matrix())
}

/// Dense B^2 observable. Even chains only.
pub fn b_squared_operator(n: usize) -> Result<DenseOperator> {
    Ok(build_b(n)?.square_matrix())
}

/// <J^2> of a density matrix.
pub fn j_squared_rho(rho: &DensityMatrix) -> Result<f64> {
    spin::expectation_rho(&j_squared_operator(rho.n_qubits())?, rho)
}

/// <B^2> of a density matrix.
pub fn b_squared_rho(rho: &DensityMatrix) -> Result<f64> {
    spin::expectation_rho(&b_squared_operator(rho.n_qubits())?, rho)
}

/// Both second moments of a density matrix.
pub fn moment_pair_rho(rho: &DensityMatrix) -> Result<(f64, f64)> {
    Ok((j_squared_rho(rho)?, b_squared_rho(rho)?))
}

/// Largest <B^2> over product states: `N^4/4 + 2 (N-1) N (N+1) / 3`.
///
/// Attained by z-aligned products with spins following the sign of -b_k
/// (the domain wall): the longitudinal part contributes (sum_k |b_k|)^2 =
/// N^4/4 and the two transverse axes contribute sum_k b_k^2 each.
pub fn b_squared_classical(n: usize) -> Result<f64> {
    spin::b_coefficients(n)?; // even-chain validation
    let nf = n as f64;
    Ok(nf.powi(4) / 4.0 + 2.0 * (nf - 1.0) * nf * (nf + 1.0) / 3.0)
}

/// Closed-form <B^2> of a fully paired singlet configuration:
/// `3 sum_pairs (b_j - b_k)^2`.
pub fn b_squared_singlet_pairs(config: &PairingConfiguration) -> Result<f64> {
    config.validate()?;
    if !config.singles.is_empty() {
        return Err(Error::InvalidPairing {
            reason: "closed form requires a fully paired configuration".into(),
        });
    }
    let b = spin::b_coefficients(config.n)?;
    Ok(config
        .pairs
        .iter()
        .map(|&(j, k)| {
            let d = b[j - 1] - b[k - 1];
            3.0 * d * d
        })
        .sum())
}

/// A certified upper line `<B^2> <= slope <J^2> + intercept` for all states
/// that stay positive under the given partial transposes.
#[derive(Debug, Clone)]
pub struct LineCertificate {
    pub n: usize,
    pub slope: f64,
    /// -optimum of the relaxation (the numerical intercept).
    pub intercept: f64,
    /// -dual_bound: rigorously valid intercept, >= `intercept`.
    pub intercept_certified: f64,
    /// Transposed site sets defining the relaxation.
    pub partitions: Vec<Vec<usize>>,
    /// The full solver output (optimizer state, gap, iterations).
    pub solution: SdpSolution,
}

/// Solves `min tr((slope J^2 - B^2) rho)` over the PPT relaxation that
/// transposes each listed site set, and packages the result as an upper
/// line on <B^2>.
pub fn certify_line_partitions(
    n: usize,
    slope: f64,
    partitions: Vec<Vec<usize>>,
    options: &SdpOptions,
) -> Result<LineCertificate> {
    if !slope.is_finite() {
        return Err(Error::invalid_parameter("slope", "must be finite"));
    }
    let objective = j_squared_operator(n)?
        .scaled(slope)
        .add(&b_squared_operator(n)?.scaled(-1.0))?;
    let problem = SdpProblem::new(n, objective, partitions.clone())?;
    let solution = solve_sdp(&problem, options)?;
    Ok(LineCertificate {
        n,
        slope,
        intercept: -solution.optimum,
        intercept_certified: -solution.dual_bound,
        partitions,
        solution,
    })
}

/// [`certify_line_partitions`] for contiguous cuts: each cut after site `c`
/// transposes the left block `1..=c`.
pub fn certify_line(
    n: usize,
    slope: f64,
    cuts: &[usize],
    options: &SdpOptions,
) -> Result<LineCertificate> {
    certify_line_partitions(n, slope, cut_partitions(n, cuts)?, options)
}

/// One slope of a Pareto scan.
#[derive(Debug, Clone, Copy)]
pub struct ParetoPoint {
    pub slope: f64,
    pub intercept: f64,
    pub intercept_certified: f64,
    pub duality_gap: f64,
    pub iterations: usize,
}

/// Certifies a whole grid of slopes (in parallel).
pub fn pareto_scan_partitions(
    n: usize,
    partitions: &[Vec<usize>],
    slopes: &[f64],
    options: &SdpOptions,
) -> Result<Vec<ParetoPoint>> {
    if slopes.is_empty() {
        return Err(Error::invalid_parameter("slopes", "grid is empty"));
    }
    slopes
        .par_iter()
        .map(|&slope| {
            let certificate = certify_line_partitions(n, slope, partitions.to_vec(), options)?;
            Ok(ParetoPoint {
                slope,
                intercept: certificate.intercept,
                intercept_certified: certificate.intercept_certified,
                duality_gap: certificate.solution.duality_gap,
                iterations: certificate.solution.iterations,
            })
        })
        .collect()
}

/// [`pareto_scan_partitions`] for contiguous cuts.
pub fn pareto_scan(
    n: usize,
    cuts: &[usize],
    slopes: &[f64],
    options: &SdpOptions,
) -> Result<Vec<ParetoPoint>> {
    pareto_scan_partitions(n, &cut_partitions(n, cuts)?, slopes, options)
}

/// Bisects the slope at which the intercept a(m) crosses `target`.
///
/// Requires a bracket with a(lo) >= target >= a(hi); a(m) is nonincreasing,
/// so the predicate a(m) > target is monotone and the returned slope is the
/// crossing point to within `slope_tol`.
pub fn optimal_slope_at_intercept(
    n: usize,
    cuts: &[usize],
    target: f64,
    slope_lo: f64,
    slope_hi: f64,
    slope_tol: f64,
    options: &SdpOptions,
) -> Result<f64> {
    if !(slope_lo.is_finite() && slope_hi.is_finite() && slope_lo < slope_hi) {
        return Err(Error::invalid_parameter(
            "slope_lo",
            "bracket must satisfy slope_lo < slope_hi with finite endpoints",
        ));
    }
    if !(slope_tol.is_finite() && slope_tol > 0.0) {
        return Err(Error::invalid_parameter("slope_tol", "must be positive"));
    }
    let a_lo = certify_line(n, slope_lo, cuts, options)?.intercept;
    let a_hi = certify_line(n, slope_hi, cuts, options)?.intercept;
    if !(a_lo >= target && target >= a_hi) {
        return Err(Error::invalid_parameter(
            "target",
            format!("intercepts a({slope_lo}) = {a_lo}, a({slope_hi}) = {a_hi} do not bracket {target}"),
        ));
    }
    let (mut lo, mut hi) = (slope_lo, slope_hi);
    while hi - lo > slope_tol {
        let mid = 0.5 * (lo + hi);
        if certify_line(n, mid, cuts, options)?.intercept > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Checks a state's moments against a certified line (using the rigorous
/// intercept). Violation witnesses entanglement across at least one cut.
pub fn check_partition_inequality(
    certificate: &LineCertificate,
    j2: f64,
    b2: f64,
) -> BoundReport {
    BoundReport::evaluate_upper(
        "b_squared_line",
        vec![
            ("n".into(), certificate.n as f64),
            ("slope".into(), certificate.slope),
            ("intercept".into(), certificate.intercept_certified),
        ],
        certificate.slope * j2 + certificate.intercept_certified,
        b2,
    )
}

/// The conjectured envelope for states separable across the half cut:
/// `<B^2> <= 6N + slope <J^2>` with slope `(<B^2>_cl - 6N) / (2N)`.
///
/// The line interpolates the adjacent-singlet point (0, 6N) and the domain
/// wall (2N, <B^2>_cl), and mixtures of the two lie exactly on it.
#[derive(Debug, Clone, Copy)]
pub struct ConjectureLine {
    pub n: usize,
    pub intercept: f64,
    pub slope: f64,
}

/// Builds the conjectured line for an even chain.
pub fn conjecture_line(n: usize) -> Result<ConjectureLine> {
    let intercept = 6.0 * n as f64;
    let slope = (b_squared_classical(n)? - intercept) / (2.0 * n as f64);
    Ok(ConjectureLine {
        n,
        intercept,
        slope,
    })
}

impl ConjectureLine {
    /// The conjectured ceiling on <B^2> at a given <J^2>.
    pub fn evaluate(&self, j2: f64) -> f64 {
        self.intercept + self.slope * j2
    }

    /// Upper-bound report for one moment pair.
    pub fn check(&self, j2: f64, b2: f64) -> BoundReport {
        BoundReport::evaluate_upper(
            "b_squared_conjecture",
            vec![
                ("n".into(), self.n as f64),
                ("slope".into(), self.slope),
                ("intercept".into(), self.intercept),
            ],
            self.evaluate(j2),
            b2,
        )
    }
}

/// Outcome of random sampling against the conjectured line.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub line: ConjectureLine,
    pub samples: usize,
    /// Smallest margin (line minus <B^2>) seen; negative would be a breach.
    pub min_margin: f64,
    pub max_margin: f64,
    /// Samples whose margin fell below -CONJECTURE_SLACK.
    pub violations: usize,
    /// Margin counts over `bins` equal bins spanning [min_margin, max_margin].
    pub histogram: Vec<usize>,
    pub bin_width: f64,
}

/// A Haar-random product across the half cut: psi_A on sites 1..=N/2 tensor
/// psi_B on the rest.
fn half_cut_product(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Result<PureState> {
    let half = n / 2;
    let left = crate::random::haar_state(half, rng)?;
    let right = crate::random::haar_state(n - half, rng)?;
    let dim_right = right.dim();
    let mut amp = nalgebra::DVector::zeros(1 << n);
    for (i, a) in left.amplitudes().iter().enumerate() {
        for (j, b) in right.amplitudes().iter().enumerate() {
            amp[(i * dim_right) | j] = a * b;
        }
    }
    PureState::new(n, amp)
}

/// Moment pairs of `samples` Haar-random half-cut products (deterministic
/// in the seed; each sample has its own derived stream).
pub fn sample_moment_cloud(n: usize, samples: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::ParityConstraint {
            n,
            requirement: "half-cut sampling needs an even chain",
        });
    }
    (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = crate::random::stream_rng(seed, index as u64);
            let psi = half_cut_product(n, &mut rng)?;
            moment_pair(&psi)
        })
        .collect()
}

/// Samples pure half-cut products and simplex mixtures of such products and
/// tallies their margins to the conjectured line.
///
/// Moments are linear in the state, so a mixture's pair is the weighted
/// average of its components' pairs; no density matrices are materialized.
pub fn conjecture_check(
    n: usize,
    product_samples: usize,
    mixture_samples: usize,
    mixture_components: usize,
    seed: u64,
) -> Result<ConjectureReport> {
    if product_samples + mixture_samples == 0 {
        return Err(Error::invalid_parameter("samples", "nothing to sample"));
    }
    if mixture_samples > 0 && mixture_components < 2 {
        return Err(Error::invalid_parameter(
            "mixture_components",
            "a mixture needs at least two components",
        ));
    }
    let line = conjecture_line(n)?;
    let pure_pairs = sample_moment_cloud(n, product_samples, seed)?;
    let mixed_pairs: Vec<(f64, f64)> = (0..mixture_samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = crate::random::stream_rng(seed, (product_samples + index) as u64);
            let weights = crate::random::simplex_weights(mixture_components, &mut rng);
            let mut j2 = 0.0;
            let mut b2 = 0.0;
            for &w in &weights {
                let psi = half_cut_product(n, &mut rng)?;
                let (pj, pb) = moment_pair(&psi)?;
                j2 += w * pj;
                b2 += w * pb;
            }
            Ok((j2, b2))
        })
        .collect::<Result<_>>()?;

    let margins: Vec<f64> = pure_pairs
        .iter()
        .chain(mixed_pairs.iter())
        .map(|&(j2, b2)| line.evaluate(j2) - b2)
        .collect();
    let min_margin = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_margin = margins.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let violations = margins
        .iter()
        .filter(|&&m| m < -tol::CONJECTURE_SLACK)
        .count();

    let bins = 16usize;
    let span = (max_margin - min_margin).max(f64::MIN_POSITIVE);
    let bin_width = span / bins as f64;
    let mut histogram = vec![0usize; bins];
    for &margin in &margins {
        let slot = (((margin - min_margin) / bin_width) as usize).min(bins - 1);
        histogram[slot] += 1;
    }
    Ok(ConjectureReport {
        line,
        samples: margins.len(),
        min_margin,
        max_margin,
        violations,
        histogram,
        bin_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    #[test]
    fn reference_moment_pairs() {
        let n = 4;
        // Adjacent singlets: (0, 6N).
        let rn = states::singlet_pairing_state(&states::right_neighbor(n).unwrap()).unwrap();
        let (j2, b2) = moment_pair(&rn).unwrap();
        assert!(j2.abs() < 1e-10);
        assert!((b2 - 24.0).abs() < 1e-10);
        // Hugging: (0, 120).
        let hug = states::singlet_pairing_state(&states::hugging(n).unwrap()).unwrap();
        let (j2, b2) = moment_pair(&hug).unwrap();
        assert!(j2.abs() < 1e-10);
        assert!((b2 - 120.0).abs() < 1e-10);
        // Domain wall: (2N, classical maximum).
        let wall = states::domain_wall_state(n).unwrap();
        let (j2, b2) = moment_pair(&wall).unwrap();
        assert!((j2 - 8.0).abs() < 1e-10);
        assert!((b2 - 104.0).abs() < 1e-10);
    }

    #[test]
    fn classical_maximum_formula() {
        assert!((b_squared_classical(2).unwrap() - 8.0).abs() < 1e-12);
        assert!((b_squared_classical(4).unwrap() - 104.0).abs() < 1e-12);
        assert!((b_squared_classical(6).unwrap() - 464.0).abs() < 1e-12);
    }

    #[test]
    fn classical_maximum_matches_sign_enumeration() {
        // Independent oracle: over z-product states the two moments are
        // (sum_k b_k s_k)^2 + 2 sum_k b_k^2 with s_k = +-1; enumerate.
        for n in [4usize, 6] {
            let b = spin::b_coefficients(n).unwrap();
            let transverse: f64 = 2.0 * b.iter().map(|x| x * x).sum::<f64>();
            let mut best = f64::NEG_INFINITY;
            for signs in 0..(1usize << n) {
                let longitudinal: f64 = b
                    .iter()
                    .enumerate()
                    .map(|(k, &bk)| if signs & (1 << k) != 0 { bk } else { -bk })
                    .sum();
                best = best.max(longitudinal * longitudinal + transverse);
            }
            assert!((best - b_squared_classical(n).unwrap()).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn singlet_pair_closed_form_matches_the_state() {
        for n in [4usize, 8] {
            for config in [
                states::right_neighbor(n).unwrap(),
                states::hugging(n).unwrap(),
            ] {
                let closed = b_squared_singlet_pairs(&config).unwrap();
                let psi = states::singlet_pairing_state(&config).unwrap();
                let direct = b_squared(&psi).unwrap();
                assert!((closed - direct).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn matrix_free_moments_match_dense_operators() {
        let n = 4;
        let mut rng = crate::random::seeded_rng(5);
        let psi = crate::random::haar_state(n, &mut rng).unwrap();
        let j_free = j_squared(&psi).unwrap();
        let j_dense = spin::expectation(&j_squared_operator(n).unwrap(), &psi).unwrap();
        assert!((j_free - j_dense).abs() < 1e-10);
        let b_free = b_squared(&psi).unwrap();
        let b_dense = spin::expectation(&b_squared_operator(n).unwrap(), &psi).unwrap();
        assert!((b_free - b_dense).abs() < 1e-10);
        // Density route agrees on the pure state's projector.
        let rho = psi.to_density();
        let (j_rho, b_rho) = moment_pair_rho(&rho).unwrap();
        assert!((j_rho - j_free).abs() < 1e-10);
        assert!((b_rho - b_free).abs() < 1e-10);
    }

    #[test]
    fn wall_singlet_mixtures_sit_exactly_on_the_conjectured_line() {
        let n = 4;
        let line = conjecture_line(n).unwrap();
        assert!((line.intercept - 24.0).abs() < 1e-12);
        assert!((line.slope - 10.0).abs() < 1e-12);
        let rn = states::singlet_pairing_state(&states::right_neighbor(n).unwrap())
            .unwrap()
            .to_density();
        let wall = states::domain_wall_state(n).unwrap().to_density();
        for p in [0.0, 0.3, 0.75, 1.0] {
            let rho = states::mixture(&[wall.clone(), rn.clone()], &[p, 1.0 - p]).unwrap();
            let (j2, b2) = moment_pair_rho(&rho).unwrap();
            assert!(
                (b2 - line.evaluate(j2)).abs() < 1e-9,
                "p = {p}: ({j2}, {b2})"
            );
            assert!(!line.check(j2, b2).violated);
        }
        // The hugging point is far above the line: the check must fire.
        let hug = states::singlet_pairing_state(&states::hugging(n).unwrap()).unwrap();
        let (j2, b2) = moment_pair(&hug).unwrap();
        assert!(line.check(j2, b2).violated);
    }

    #[test]
    fn half_cut_sampling_respects_the_line() {
        let report = conjecture_check(4, 60, 20, 3, 99).unwrap();
        assert_eq!(report.samples, 80);
        assert_eq!(report.violations, 0, "min margin {}", report.min_margin);
        assert!(report.min_margin > -tol::CONJECTURE_SLACK);
        assert_eq!(report.histogram.iter().sum::<usize>(), report.samples);
        // Determinism: same seed, same cloud.
        let again = conjecture_check(4, 60, 20, 3, 99).unwrap();
        assert_eq!(report.min_margin, again.min_margin);
        assert_eq!(report.histogram, again.histogram);
    }

    #[test]
    fn certified_line_reaches_the_singlet_intercept() {
        // At slope 12 >= 10 the half-cut relaxation pins the intercept at
        // the adjacent-singlet point 6N = 24.
        let certificate =
            certify_line(4, 12.0, &[2], &SdpOptions::default()).unwrap();
        assert!(
            (certificate.intercept - 24.0).abs() < 1e-3,
            "intercept {}",
            certificate.intercept
        );
        assert!(certificate.intercept_certified >= certificate.intercept - 1e-9);
        assert!(
            certificate.intercept_certified - certificate.intercept
                < 1e-5 * (1.0 + certificate.intercept.abs())
        );
        // The adjacent-singlet state must not violate the certified line.
        let rn = states::singlet_pairing_state(&states::right_neighbor(4).unwrap()).unwrap();
        let (j2, b2) = moment_pair(&rn).unwrap();
        let report = check_partition_inequality(&certificate, j2, b2);
        assert!(!report.violated);
        // The hugging state must.
        let hug = states::singlet_pairing_state(&states::hugging(4).unwrap()).unwrap();
        let (j2, b2) = moment_pair(&hug).unwrap();
        assert!(check_partition_inequality(&certificate, j2, b2).violated);
    }

    #[test]
    fn slope_bisection_finds_the_conjectured_slope() {
        // For the half cut the intercept sits at 24 for m >= 10 and rises
        // with slope -8 below (the domain wall takes over), so the crossing
        // of 24 is the conjectured slope 10.
        let slope = optimal_slope_at_intercept(
            4,
            &[2],
            24.0,
            8.0,
            12.0,
            0.05,
            &SdpOptions::default(),
        )
        .unwrap();
        assert!(
            (slope - 10.0).abs() < 0.06,
            "bisection returned {slope}"
        );
    }

    #[test]
    fn input_validation() {
        assert!(b_squared_operator(3).is_err()); // odd chain
        assert!(sample_moment_cloud(5, 3, 1).is_err());
        assert!(conjecture_check(4, 0, 0, 2, 1).is_err());
        assert!(conjecture_check(4, 1, 1, 1, 1).is_err());
        assert!(certify_line(4, f64::NAN, &[2], &SdpOptions::default()).is_err());
        assert!(optimal_slope_at_intercept(
            4,
            &[2],
            1000.0,
            8.0,
            12.0,
            0.1,
            &SdpOptions::default()
        )
        .is_err());
    }

    #[test]
    fn pareto_scan_is_monotone() {
        let points = pareto_scan(4, &[2], &[9.0, 10.0, 11.0, 14.0], &SdpOptions::default())
            .unwrap();
        for pair in points.windows(2) {
            // Returned intercepts sit within the certified gap below the true
            // ones, so monotonicity holds up to the earlier point's gap.
            assert!(
                pair[1].intercept <= pair[0].intercept + pair[0].duality_gap,
                "intercepts must not increase with slope"
            );
        }
        // Beyond the crossing the intercept stays at the singlet point.
        assert!((points[1].intercept - 24.0).abs() < 1e-3);
        assert!((points[3].intercept - 24.0).abs() < 1e-3);
        // Below it the domain wall pushes the intercept up by 8 per unit.
        assert!((points[0].intercept - 32.0).abs() < 2e-3);
    }
}
