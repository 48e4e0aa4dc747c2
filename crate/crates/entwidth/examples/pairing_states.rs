//! Tour of the pairing-state constructors and their geometric widths.
//!
//! A pairing configuration lists disjoint singlet pairs (j, k) plus Bloch
//! vectors for the leftover sites; its width is the largest span k - j + 1.
//! The library ships four named coverings of an even chain — hugging
//! (j, N+1-j), right-neighbor (2j-1, 2j), next-nearest-neighbor blocks,
//! and the two Majumdar-Ghosh dimer coverings — and the configurations
//! round-trip through JSON, which is also how the CLI ingests custom
//! states.
//!
//! Run with: cargo run --release --example pairing_states

use entwidth::error::Result;
use entwidth::gradient;
use entwidth::report::fmt_float;
use entwidth::states::{self, PairingConfiguration};

fn show(label: &str, config: &PairingConfiguration) -> Result<()> {
    let state = states::singlet_pairing_state(config)?;
    let (j2, b2) = gradient::moment_pair(&state)?;
    println!(
        "{label:>16}: width {:>2}, pairs {:?}, j2 = {}, b2 = {}",
        config.width(),
        config.pairs,
        fmt_float(j2),
        fmt_float(b2)
    );
    // For pure singlet coverings <B^2> has a closed form over the pairs;
    // the dense expectation must reproduce it.
    let closed = gradient::b_squared_singlet_pairs(config)?;
    assert!((b2 - closed).abs() < 1e-9, "{label}: closed form disagrees");
    Ok(())
}

fn main() -> Result<()> {
    let n = 8;
    println!("N = {n} singlet coverings:");
    show("hugging", &states::hugging(n)?)?;
    show("right_neighbor", &states::right_neighbor(n)?)?;
    show("nnn_blocks", &states::nnn_blocks(n)?)?;
    show("mg_even", &states::majumdar_ghosh(n, false)?)?;
    show("mg_odd", &states::majumdar_ghosh(n, true)?)?;

    // Configurations serialize to a small JSON schema: chain length,
    // pairs, and optional unpaired sites with Bloch vectors.
    let custom = PairingConfiguration::new(
        6,
        vec![(1, 4), (2, 3)],
        vec![
            states::SingleSite { site: 5, bloch: [0.0, 0.0, 1.0] },
            states::SingleSite { site: 6, bloch: [1.0, 0.0, 0.0] },
        ],
    )?;
    let text = custom.to_json()?;
    println!();
    println!("custom configuration as JSON: {text}");
    let back = PairingConfiguration::from_json(&text)?;
    assert_eq!(back.pairs, custom.pairs);
    assert_eq!(back.width(), 4);

    // A fully unpaired configuration is a product state; its b2 sits at
    // the classical value for aligned spins only when the spins conspire.
    let blochs = states::spiral_blochs(n);
    let spiral = states::product_state(&blochs)?;
    let (j2_spiral, b2_spiral) = gradient::moment_pair(&spiral)?;
    println!();
    println!(
        "spiral product state: j2 = {}, b2 = {}",
        fmt_float(j2_spiral),
        fmt_float(b2_spiral)
    );
    Ok(())
}
