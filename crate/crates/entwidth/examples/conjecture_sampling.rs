//! Monte-Carlo stress test of the conjectured moment line.
//!
//! The certified lines hold for states that are separable (or PPT) across
//! the chosen cuts. Beyond them sits a conjecture: every state of an
//! N-site chain obeys
//!
//!   <B^2> <= 6 N + ((<B^2>_cl - 6 N) / 2 N) <J^2>,
//!
//! a single line through the singlet-chain point (0, 6N) and the
//! classically-saturated corner (2N, <B^2>_cl). This example samples Haar
//! product states across the half cut, convex mixtures of them, and fully
//! Haar-random pure states, and reports the worst margin to the line.
//! The known extremal states land exactly on it.
//!
//! Run with: cargo run --release --example conjecture_sampling

use entwidth::error::Result;
use entwidth::gradient;
use entwidth::random::DEFAULT_SEED;
use entwidth::report::fmt_float;
use entwidth::states;

fn main() -> Result<()> {
    for n in [4, 6] {
        let line = gradient::conjecture_line(n)?;
        println!(
            "N = {n}: line b2 <= {} + {} j2",
            fmt_float(line.intercept),
            fmt_float(line.slope)
        );

        // 2000 product states across the half cut plus 500 three-part
        // mixtures of such products; moments are linear, so mixtures land
        // on convex combinations of their components' moment pairs.
        let report = gradient::conjecture_check(n, 2000, 500, 3, DEFAULT_SEED)?;
        println!(
            "  {} samples: margin in [{}, {}], violations: {}",
            report.samples,
            fmt_float(report.min_margin),
            fmt_float(report.max_margin),
            report.violations
        );
        assert_eq!(report.violations, 0, "no sampled state may cross the line");

        // The two endpoint families sit exactly on the line. Adjacent
        // singlets realize (0, 6N) at any even N; the domain wall
        // |0..01..1> pins the classical corner (2N, b2_cl).
        let rn = states::singlet_pairing_state(&states::right_neighbor(n)?)?;
        let (j2_rn, b2_rn) = gradient::moment_pair(&rn)?;
        let wall = states::domain_wall_state(n)?;
        let (j2_wall, b2_wall) = gradient::moment_pair(&wall)?;
        println!(
            "  singlet endpoint: ({}, {}), wall endpoint: ({}, {})",
            fmt_float(j2_rn),
            fmt_float(b2_rn),
            fmt_float(j2_wall),
            fmt_float(b2_wall)
        );
        assert!(j2_rn.abs() < 1e-9 && (b2_rn - line.intercept).abs() < 1e-9);
        assert!((b2_wall - line.evaluate(j2_wall)).abs() < 1e-9);
        println!();
    }
    Ok(())
}
