//! Certified moment lines for a 4-site chain.
//!
//! For product states across a cut, the pair of moments (<J^2>, <B^2>)
//! is confined below a line b2 <= m j2 + a(m). Each a(m) comes from a
//! semidefinite relaxation: minimize tr((m J^2 - B^2) rho) over states
//! that stay positive under partial transposition of the cut blocks.
//! The interior-point solver returns the optimum together with a dual
//! certificate, so every printed intercept carries a rigorous error bar
//! (its duality gap).
//!
//! Run with: cargo run --release --example sdp_certify

use entwidth::error::Result;
use entwidth::gradient;
use entwidth::report::fmt_float;
use entwidth::sdp::SdpOptions;
use entwidth::states;

fn main() -> Result<()> {
    let n = 4;
    let options = SdpOptions::default();

    // One line, one cut: splitting 12|34 at slope m = 10 gives a(10) = 24.
    let line = gradient::certify_line(n, 10.0, &[2], &options)?;
    println!("N = {n}, cut after site 2, slope m = 10:");
    println!("  intercept a(m)      = {}", fmt_float(line.intercept));
    println!("  certified intercept = {}", fmt_float(line.intercept_certified));
    println!(
        "  duality gap         = {} ({} iterations)",
        fmt_float(line.solution.duality_gap),
        line.solution.iterations
    );
    assert!((line.intercept - 24.0).abs() < 1e-3);

    // The whole trade-off curve under both cuts simultaneously. The
    // intercept flattens to 24 once the slope is generous enough and
    // climbs steeply when the slope is squeezed.
    let slopes: Vec<f64> = (0..=8).map(|i| 8.0 + 2.0 * i as f64).collect();
    let points = gradient::pareto_scan(n, &[2], &slopes, &options)?;
    println!();
    println!("single-cut trade-off curve:");
    println!("{:>8} {:>18} {:>12}", "slope m", "intercept a(m)", "gap");
    for point in &points {
        println!(
            "{:>8} {:>18} {:>12.2e}",
            point.slope,
            fmt_float(point.intercept),
            point.duality_gap
        );
    }

    // Demanding both cuts {1|234, 12|34, 123|4} at once tightens the
    // family; bisection finds where its intercept crosses a target.
    let crossing = gradient::optimal_slope_at_intercept(n, &[1, 2, 3], 24.0, 8.0, 24.0, 0.05, &options)?;
    println!();
    println!("three-cut family: a(m) crosses 24 near m = {crossing:.2}");

    // The line separates: adjacent singlets never cross the 12|34 cut,
    // so their moments respect it, while the hugging pairs (1,4), (2,3)
    // straddle the cut and push <B^2> far above — the violation is the
    // entanglement witness.
    let rn = states::singlet_pairing_state(&states::right_neighbor(n)?)?;
    let hugging = states::singlet_pairing_state(&states::hugging(n)?)?;
    println!();
    for (label, state, expect_violation) in
        [("right-neighbor", &rn, false), ("hugging", &hugging, true)]
    {
        let (j2, b2) = gradient::moment_pair(state)?;
        let report = gradient::check_partition_inequality(&line, j2, b2);
        println!(
            "{label:>16}: j2 = {}, b2 = {}, line value = {}, violated = {}",
            fmt_float(j2),
            fmt_float(b2),
            fmt_float(report.bound),
            report.violated
        );
        assert_eq!(report.violated, expect_violation);
    }
    Ok(())
}
