//! End-to-end checks that pin the toolkit's headline numbers: closed-form
//! variances, bound crossings, certified intercepts, and soundness sweeps.
//!
//! Each check prints one `acceptance NN <name>: pass` line (visible with
//! `--nocapture`), so a full run reads as a checklist; a failure shows up
//! as the corresponding test failing. Tolerances and runtime caps are
//! asserted, not just reported.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use entwidth::chi;
use entwidth::gradient;
use entwidth::linalg::PureState;
use entwidth::qfi;
use entwidth::random::{self, DEFAULT_SEED};
use entwidth::sdp::SdpOptions;
use entwidth::spin::{self, ChainGeometry};
use entwidth::states;
use entwidth::variance;

fn pass(index: usize, name: &str, detail: String) {
    println!("acceptance {index:02} {name}: pass ({detail})");
}

#[test]
fn acceptance_01_right_neighbor_variance_closed_form() {
    let start = Instant::now();
    for n in [4usize, 8, 16] {
        let geometry = ChainGeometry::new(n, -0.5).unwrap();
        let j = spin::build_j(geometry, 2.0 * n as f64).unwrap();
        let state = states::singlet_pairing_state(&states::right_neighbor(n).unwrap()).unwrap();
        let measured = j.variance(&state).unwrap();
        let closed = 1.5 * n as f64 * (1.0 - (PI / n as f64).cos());
        assert!(
            (measured - closed).abs() <= 1e-9,
            "N = {n}: measured {measured}, closed form {closed}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    pass(
        1,
        "right-neighbor variance closed form",
        format!("N in {{4, 8, 16}} to 1e-9, {elapsed:.2?}"),
    );
}

#[test]
fn acceptance_02_hugging_zero_point() {
    let geometry = ChainGeometry::new(16, -0.5).unwrap();
    let j = spin::build_j(geometry, 32.0).unwrap();
    let hugging = states::singlet_pairing_state(&states::hugging(16).unwrap()).unwrap();
    let measured = j.variance(&hugging).unwrap();
    assert!(measured.abs() <= 1e-9, "hugging variance {measured}");
    pass(2, "hugging zero point", format!("variance {measured:.2e} at lambda/d = 32"));
}

#[test]
fn acceptance_03_pair_variance_closed_form_vs_brute_force() {
    let start = Instant::now();
    // 41 ratio points spanning both branches of the closed form, each
    // checked against 1000 multistart numerical minimizations.
    let deviations: Vec<(f64, f64)> = (0..41)
        .into_par_iter()
        .map(|k| {
            let eps = -1.0 + 0.05 * k as f64;
            let closed = variance::min_two_particle_variance(1.0, eps);
            let brute = variance::brute_force_min_two_particle(1.0, eps, 1000, DEFAULT_SEED + k);
            (eps, (closed - brute).abs())
        })
        .collect();
    let (worst_eps, worst) = deviations
        .iter()
        .copied()
        .fold((0.0, 0.0), |acc, item| if item.1 > acc.1 { item } else { acc });
    assert!(worst <= 1e-6, "worst deviation {worst} at epsilon {worst_eps}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        3,
        "pair-variance closed form vs brute force",
        format!("41 ratio points, worst deviation {worst:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn acceptance_04_hugging_violation_window() {
    let n = 16;
    let geometry = ChainGeometry::new(n, -0.5).unwrap();
    let grid: Vec<f64> = (0..=124).map(|i| 2.0 + 0.5 * i as f64).collect();
    let hugging = states::singlet_pairing_state(&states::hugging(n).unwrap()).unwrap();
    let rows = variance::scan_variance(
        geometry,
        &grid,
        &[("hugging".to_string(), hugging)],
        &[4],
        &[2],
    )
    .unwrap();
    // The window where the hugging variance undercuts both the exact
    // width-2 floor and the width-4 floor.
    let window: Vec<f64> = rows
        .iter()
        .filter(|row| {
            row.variances[0] < row.bounds_matching[0] && row.variances[0] < row.bounds_simple[0]
        })
        .map(|row| row.lambda_over_d)
        .collect();
    assert!(
        !window.is_empty(),
        "no wavelength violates both the width-2 and width-4 floors"
    );
    pass(
        4,
        "hugging violation window",
        format!(
            "beats w = 2 and w = 4 floors for lambda/d in [{}, {}]",
            window.first().unwrap(),
            window.last().unwrap()
        ),
    );
}

#[test]
fn acceptance_05_chi_extremal_states() {
    for n in [8usize, 12, 16] {
        let ceiling = chi::chi_classical_bound(n).unwrap();
        let closed = -(n as f64) * (3.0 * PI / n as f64).sin() / (PI / n as f64).sin();
        assert!((ceiling - closed).abs() <= 1e-12, "N = {n} ceiling {ceiling} vs {closed}");

        // The next-nearest-neighbor covering undercuts the ceiling by a
        // fixed margin: chi = -3N < -N sin(3 pi / N) / sin(pi / N).
        let nnn = states::singlet_pairing_state(&states::nnn_blocks(n).unwrap()).unwrap();
        let chi_nnn = chi::chi(&nnn).unwrap();
        assert!((chi_nnn + 3.0 * n as f64).abs() <= 1e-9, "N = {n}: chi {chi_nnn}");
        assert!(chi_nnn < ceiling, "N = {n}: {chi_nnn} must undercut {ceiling}");

        // The spiral product state saturates the ceiling exactly.
        let spiral = states::product_state(&states::spiral_blochs(n)).unwrap();
        let chi_spiral = chi::chi(&spiral).unwrap();
        assert!(
            (chi_spiral - ceiling).abs() <= 1e-9,
            "N = {n}: spiral chi {chi_spiral} vs ceiling {ceiling}"
        );
    }
    pass(
        5,
        "chi extremal states",
        "covering reaches -3N, spiral saturates the classical ceiling, N in {8, 12, 16}"
            .to_string(),
    );
}

#[test]
fn acceptance_06_frustration_scan_crossings() {
    let start = Instant::now();
    let n = 8;
    let grid: Vec<f64> = (0..=150).map(|i| 0.01 * i as f64).collect();
    let rows = chi::scan_alpha(n, &grid).unwrap();

    // Width >= 3 onset from the chi criterion.
    let onset = rows
        .iter()
        .find(|row| row.flag_width3)
        .expect("chi must cross its ceiling somewhere")
        .alpha;
    assert!((onset - 0.86).abs() <= 0.05, "width-3 onset at {onset}");

    // Multipartite entanglement holds at both ends of the range with a
    // gap in the middle; locate both crossings.
    assert!(rows.first().unwrap().flag_multipartite, "expected flag at alpha = 0");
    assert!(rows.last().unwrap().flag_multipartite, "expected flag at alpha = 1.5");
    let off = rows
        .windows(2)
        .find(|pair| pair[0].flag_multipartite && !pair[1].flag_multipartite)
        .expect("flag must switch off")[1]
        .alpha;
    let on = rows
        .windows(2)
        .find(|pair| pair[0].alpha >= off && !pair[0].flag_multipartite && pair[1].flag_multipartite)
        .expect("flag must switch back on")[1]
        .alpha;
    assert!((off - 0.3).abs() <= 0.05, "multipartite switch-off at {off}");
    assert!((on - 1.1).abs() <= 0.05, "multipartite switch-on at {on}");

    // Sudden jumps of chi, merged into intervals when they touch.
    let jumps = chi::detect_jumps(&rows, chi::default_jump_threshold(n));
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for jump in &jumps {
        match intervals.last_mut() {
            Some(last) if (last.1 - jump.alpha_before).abs() < 1e-12 => last.1 = jump.alpha_after,
            _ => intervals.push((jump.alpha_before, jump.alpha_after)),
        }
    }
    assert_eq!(intervals.len(), 2, "expected two jump intervals: {intervals:?}");
    let centers: Vec<f64> = intervals.iter().map(|(a, b)| 0.5 * (a + b)).collect();
    assert!((centers[0] - 0.5).abs() <= 0.05, "first jump near {}", centers[0]);
    assert!((centers[1] - 0.7).abs() <= 0.05, "second jump near {}", centers[1]);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    pass(
        6,
        "frustration scan crossings",
        format!(
            "width-3 onset {onset:.2}, multipartite off/on {off:.2}/{on:.2}, jumps near {:.2} and {:.3}, {elapsed:.2?}",
            centers[0], centers[1]
        ),
    );
}

#[test]
fn acceptance_07_dimer_point_ground_state() {
    let n = 8;
    let h2 = spin::build_h2(n, 0.5).unwrap();
    let energy = -1.5 * n as f64;
    for offset in [false, true] {
        let psi = states::singlet_pairing_state(&states::majumdar_ghosh(n, offset).unwrap())
            .unwrap();
        let h_psi = h2.apply_vec(psi.amplitudes()).unwrap();
        let residual = h_psi
            .zip_map(psi.amplitudes(), |h, p| h - energy * p)
            .norm();
        assert!(residual <= 1e-10, "offset {offset}: residual {residual}");
    }
    pass(
        7,
        "dimer-point ground state",
        format!("both coverings are H2(1/2) eigenstates at energy {energy}, residual <= 1e-10"),
    );
}

#[test]
fn acceptance_08_certified_line_constants() {
    let options = SdpOptions::default();
    let budget = Duration::from_secs(60);

    // One middle cut at slope 10: the tight intercept 24.
    let start = Instant::now();
    let middle = gradient::certify_line(4, 10.0, &[2], &options).unwrap();
    assert!(start.elapsed() < budget);
    assert!(
        (middle.intercept - 24.0).abs() <= 1e-3,
        "middle-cut intercept {}",
        middle.intercept
    );

    // The two-cut family (after sites 1 and 3): its intercept at slope 10
    // and the slope at which its intercept crosses 24.
    let start = Instant::now();
    let outer = gradient::certify_line(4, 10.0, &[1, 3], &options).unwrap();
    assert!(start.elapsed() < budget);
    assert!(
        (outer.intercept - 50.2).abs() <= 0.2,
        "two-cut intercept {}",
        outer.intercept
    );
    let start = Instant::now();
    let crossing =
        gradient::optimal_slope_at_intercept(4, &[1, 3], 24.0, 10.0, 24.0, 0.01, &options)
            .unwrap();
    assert!(start.elapsed() < budget);
    assert!((crossing - 16.1).abs() <= 0.2, "crossing slope {crossing}");

    // Six sites, cuts after 2 and 4, slope 48.
    let start = Instant::now();
    let six = gradient::certify_line(6, 48.0, &[2, 4], &options).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed < budget, "N = 6 solve took {elapsed:?}");
    assert!((six.intercept - 36.0).abs() <= 0.5, "N = 6 intercept {}", six.intercept);

    pass(
        8,
        "certified line constants",
        format!(
            "a(10) = {:.4} (one cut) / {:.4} (two cuts), crossing at m = {crossing:.2}, N = 6 a(48) = {:.4}",
            middle.intercept, outer.intercept, six.intercept
        ),
    );
}

#[test]
fn acceptance_09_moment_line_endpoints_and_mixtures() {
    let n = 4;
    let rn = states::singlet_pairing_state(&states::right_neighbor(n).unwrap()).unwrap();
    let wall = states::domain_wall_state(n).unwrap();
    let (j2_rn, b2_rn) = gradient::moment_pair(&rn).unwrap();
    let (j2_wall, b2_wall) = gradient::moment_pair(&wall).unwrap();
    assert!(j2_rn.abs() <= 1e-9 && (b2_rn - 24.0).abs() <= 1e-9, "({j2_rn}, {b2_rn})");
    assert!(
        (j2_wall - 8.0).abs() <= 1e-9 && (b2_wall - 104.0).abs() <= 1e-9,
        "({j2_wall}, {b2_wall})"
    );

    // Moments are linear, so p-mixtures of the endpoints trace the line
    // b2 = 24 + 10 j2 exactly.
    let rho_rn = rn.to_density();
    let rho_wall = wall.to_density();
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let rho = states::mixture(&[rho_rn.clone(), rho_wall.clone()], &[1.0 - p, p]).unwrap();
        let (j2, b2) = gradient::moment_pair_rho(&rho).unwrap();
        assert!(
            (b2 - (24.0 + 10.0 * j2)).abs() <= 1e-9,
            "p = {p}: ({j2}, {b2}) off the line"
        );
    }
    pass(
        9,
        "moment line endpoints and mixtures",
        "(0, 24) and (8, 104) exact, p-mixtures on 24 + 10 j2 to 1e-9".to_string(),
    );
}

#[test]
fn acceptance_10_sampling_soundness_moment_lines() {
    // Haar products across the half cut of the four-site chain never
    // cross the certified line (which coincides with the conjectured one).
    let four = gradient::conjecture_check(4, 10_000, 0, 2, DEFAULT_SEED).unwrap();
    assert_eq!(four.violations, 0, "four-site product samples crossed the line");

    // Half-chain samples against the conjectured envelope, fresh seeds.
    let mut details = vec![format!("N = 4 min margin {:.3e}", four.min_margin)];
    for n in [4usize, 6] {
        let report = gradient::conjecture_check(n, 10_000, 0, 2, DEFAULT_SEED + 1).unwrap();
        assert_eq!(report.violations, 0, "N = {n} conjecture violated");
        assert!(report.min_margin > -1e-9, "N = {n} margin {}", report.min_margin);
        details.push(format!("N = {n} min margin {:.3e}", report.min_margin));
    }
    pass(10, "sampling soundness of the moment lines", details.join(", "));
}

#[test]
fn acceptance_11_fisher_information_scaling() {
    let rows = qfi::qfi_scan(&[4, 8, 12, 16]).unwrap();
    for row in &rows {
        let closed = (row.n as f64 * row.n as f64 - 1.0) / 3.0;
        assert!(
            (row.ratio - closed).abs() <= 1e-9,
            "N = {}: ratio {} vs {closed}",
            row.n,
            row.ratio
        );
    }

    // The variance route must agree with the finite-difference fidelity
    // oracle on both pairing families.
    let mut worst: f64 = 0.0;
    for n in [4usize, 8, 12, 16] {
        let geometry = ChainGeometry::new(n, -0.5).unwrap();
        let generator = qfi::build_generator(geometry, 2.0 * n as f64).unwrap();
        for config in [states::hugging(n).unwrap(), states::right_neighbor(n).unwrap()] {
            let state = states::singlet_pairing_state(&config).unwrap();
            let exact = qfi::qfi_pure(&generator, &state).unwrap();
            let oracle = qfi::qfi_fidelity_drop(&generator, &state, 1e-4).unwrap();
            let relative = (exact - oracle).abs() / exact.max(1e-300);
            worst = worst.max(relative);
            assert!(relative <= 1e-4, "N = {n}: {exact} vs oracle {oracle}");
        }
    }
    pass(
        11,
        "Fisher information scaling",
        format!("ratio (N^2 - 1)/3 to 1e-9, oracle agreement <= {worst:.2e}"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 12: random width-limited states never beat the advertised bounds.

/// Random grouping of the chain into singlet-free blocks: pairs (j, k)
/// with span k - j + 1 <= w (crossing allowed) and leftover singles.
fn random_span_grouping(n: usize, w: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut used = vec![false; n + 1];
    let mut groups = Vec::new();
    for &site in &order {
        if used[site] {
            continue;
        }
        used[site] = true;
        let lo = site.saturating_sub(w - 1).max(1);
        let hi = (site + w - 1).min(n);
        let candidates: Vec<usize> =
            (lo..=hi).filter(|&k| k != site && !used[k]).collect();
        // One extra slot keeps "stay single" in the running.
        let pick = rng.random_range(0..=candidates.len());
        if pick == candidates.len() {
            groups.push(vec![site]);
        } else {
            let partner = candidates[pick];
            used[partner] = true;
            groups.push(vec![site.min(partner), site.max(partner)]);
        }
    }
    groups
}

/// A Haar-random pure state on each block of a random width-w grouping.
fn random_width_state(n: usize, w: usize, rng: &mut ChaCha8Rng) -> PureState {
    let blocks: Vec<(Vec<usize>, PureState)> = random_span_grouping(n, w, rng)
        .into_iter()
        .map(|sites| {
            let block = random::haar_state(sites.len(), rng).unwrap();
            (sites, block)
        })
        .collect();
    states::block_product_state(n, &blocks).unwrap()
}

#[test]
fn acceptance_12_width_limited_soundness_sweeps() {
    let n = 8;
    let geometry = ChainGeometry::new(n, -0.5).unwrap();
    let lambda = 2.0 * n as f64;
    let j = spin::build_j(geometry, lambda).unwrap();
    let slack_floor = -1e-8;
    let mut details = Vec::new();

    // Variance floors: 800 pure width-w states plus 200 three-component
    // mixtures per width, against both the matching and half-sum bounds.
    for w in [2usize, 4] {
        let matching = variance::width_bound_matching(geometry, lambda, w).unwrap();
        let simple = variance::width_bound_simple(geometry, lambda, w).unwrap();
        let mut rng = random::stream_rng(DEFAULT_SEED, 1200 + w as u64);
        let mut worst = f64::INFINITY;
        for _ in 0..800 {
            let state = random_width_state(n, w, &mut rng);
            let var = j.variance(&state).unwrap();
            worst = worst.min(var - matching);
            assert!(var - matching >= slack_floor, "w = {w}: {var} beats {matching}");
            assert!(var - simple >= slack_floor, "w = {w}: {var} beats {simple}");
        }
        for _ in 0..200 {
            let parts: Vec<_> = (0..3)
                .map(|_| random_width_state(n, w, &mut rng).to_density())
                .collect();
            let weights = random::simplex_weights(3, &mut rng);
            let rho = states::mixture(&parts, &weights).unwrap();
            let var = j.variance_rho(&rho).unwrap();
            worst = worst.min(var - matching);
            assert!(var - matching >= slack_floor, "w = {w} mixture: {var} vs {matching}");
        }
        details.push(format!("w = {w} variance slack >= {worst:.2e}"));
    }

    // Chi ceiling: 900 pure width-2 states plus 100 mixtures.
    {
        let ceiling = chi::chi_classical_bound(n).unwrap();
        let mut rng = random::stream_rng(DEFAULT_SEED, 1300);
        let mut worst = f64::INFINITY;
        for _ in 0..900 {
            let state = random_width_state(n, 2, &mut rng);
            let value = chi::chi(&state).unwrap();
            worst = worst.min(value - ceiling);
            assert!(value - ceiling >= slack_floor, "chi {value} beats {ceiling}");
        }
        for _ in 0..100 {
            let parts: Vec<_> = (0..3)
                .map(|_| random_width_state(n, 2, &mut rng).to_density())
                .collect();
            let weights = random::simplex_weights(3, &mut rng);
            let rho = states::mixture(&parts, &weights).unwrap();
            let value = chi::chi_rho(&rho).unwrap();
            worst = worst.min(value - ceiling);
            assert!(value - ceiling >= slack_floor, "mixture chi {value} vs {ceiling}");
        }
        details.push(format!("chi slack >= {worst:.2e}"));
    }

    // Energy floors: products against the separable bound, pair blocks of
    // any span against the two-producible bound.
    {
        let mut rng = random::stream_rng(DEFAULT_SEED, 1400);
        let mut worst = f64::INFINITY;
        for alpha in [0.0, 0.5, 1.0] {
            let h2 = spin::build_h2(n, alpha).unwrap();
            let separable_floor = n as f64 * chi::h_circulant(n, alpha).unwrap();
            let two_prod_floor = -(n as f64) * chi::h_2prod(alpha).unwrap();
            for _ in 0..100 {
                let blochs: Vec<[f64; 3]> =
                    (0..n).map(|_| random::random_bloch(&mut rng)).collect();
                let product = states::product_state(&blochs).unwrap();
                let energy = spin::expectation(&h2, &product).unwrap();
                worst = worst.min(energy - separable_floor);
                assert!(
                    energy - separable_floor >= slack_floor,
                    "alpha = {alpha}: product energy {energy} beats {separable_floor}"
                );
            }
            for _ in 0..100 {
                let state = random_width_state(n, n, &mut rng);
                let energy = spin::expectation(&h2, &state).unwrap();
                worst = worst.min(energy - two_prod_floor);
                assert!(
                    energy - two_prod_floor >= slack_floor,
                    "alpha = {alpha}: pair-block energy {energy} beats {two_prod_floor}"
                );
            }
        }
        details.push(format!("energy slack >= {worst:.2e}"));
    }

    pass(12, "width-limited soundness sweeps", details.join(", "));
}
