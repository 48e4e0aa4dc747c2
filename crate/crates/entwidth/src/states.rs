//! Reference states: singlet pairings (hugging, right-neighbor,
//! next-to-nearest-neighbor blocks, Majumdar-Ghosh dimer coverings), product
//! states from Bloch vectors, the domain wall, and convex mixtures.
//!
//! A pairing configuration partitions the chain into singlet pairs and single
//! sites. Its width is the largest number of sites spanned by any pair,
//! k - j + 1 for a pair (j, k); singles have width 1. Any unit Bloch vector on
//! a single site contributes the same variance to the gradient observable, so
//! singles default to spin up unless specified.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, DensityMatrix, PureState};
use crate::tol;

/// A single (unpaired) site carrying a product single-qubit state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleSite {
    /// 1-based site index.
    pub site: usize,
    /// Unit Bloch vector of the single-qubit state.
    pub bloch: [f64; 3],
}

/// A partition of a chain into singlet pairs and single sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingConfiguration {
    /// Chain length.
    pub n: usize,
    /// Singlet pairs (j, k) with j < k, 1-based.
    pub pairs: Vec<(usize, usize)>,
    /// Unpaired sites with their Bloch vectors.
    #[serde(default)]
    pub singles: Vec<SingleSite>,
}

impl PairingConfiguration {
    /// Builds and validates a configuration: every site appears exactly once,
    /// pairs are ordered j < k, Bloch vectors are unit length.
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, singles: Vec<SingleSite>) -> Result<Self> {
        let config = PairingConfiguration { n, pairs, singles };
        config.validate()?;
        Ok(config)
    }

    /// Checks the partition property and all site/Bloch constraints.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::ChainTooShort { n: self.n, min: 2 });
        }
        let mut seen = vec![false; self.n + 1];
        let mut mark = |site: usize| -> Result<()> {
            if site == 0 || site > self.n {
                return Err(Error::SiteOutOfRange { site, n: self.n });
            }
            if seen[site] {
                return Err(Error::InvalidPairing {
                    reason: format!("site {site} appears more than once"),
                });
            }
            seen[site] = true;
            Ok(())
        };
        for &(j, k) in &self.pairs {
            if j >= k {
                return Err(Error::InvalidPairing {
                    reason: format!("pair ({j}, {k}) must satisfy j < k"),
                });
            }
            mark(j)?;
            mark(k)?;
        }
        for single in &self.singles {
            mark(single.site)?;
            let norm = (single.bloch[0].powi(2)
                + single.bloch[1].powi(2)
                + single.bloch[2].powi(2))
            .sqrt();
            if (norm - 1.0).abs() > tol::BLOCH_TOL {
                return Err(Error::InvalidBloch { norm });
            }
        }
        if let Some(missing) = (1..=self.n).find(|&s| !seen[s]) {
            return Err(Error::InvalidPairing {
                reason: format!("site {missing} is neither paired nor single"),
            });
        }
        Ok(())
    }

    /// Width of the configuration: max sites spanned by a pair (k - j + 1),
    /// or 1 if everything is single.
    pub fn width(&self) -> usize {
        self.pairs.iter().map(|&(j, k)| k - j + 1).max().unwrap_or(1)
    }

    /// Parses the JSON schema
    /// `{"n": int, "pairs": [[j,k],...], "singles": [{"site": j, "bloch": [x,y,z]},...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: PairingConfiguration = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Serializes to the JSON schema used by `from_json`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::ParityConstraint {
            n,
            requirement: "requires an even chain length",
        });
    }
    Ok(())
}

/// Hugging pairing (j, N+1-j): nested pairs reaching across the whole chain;
/// width N. Even N.
pub fn hugging(n: usize) -> Result<PairingConfiguration> {
    require_even(n)?;
    let pairs = (1..=n / 2).map(|j| (j, n + 1 - j)).collect();
    PairingConfiguration::new(n, pairs, Vec::new())
}

/// Right-neighbor pairing (2j-1, 2j): adjacent pairs; width 2. Even N.
pub fn right_neighbor(n: usize) -> Result<PairingConfiguration> {
    require_even(n)?;
    let pairs = (1..=n / 2).map(|j| (2 * j - 1, 2 * j)).collect();
    PairingConfiguration::new(n, pairs, Vec::new())
}

/// Next-to-nearest-neighbor blocks: pairs (k+1, k+3) and (k+2, k+4) on each
/// block of four consecutive sites; width 3. Requires N divisible by 4.
pub fn nnn_blocks(n: usize) -> Result<PairingConfiguration> {
    if n % 4 != 0 {
        return Err(Error::ParityConstraint {
            n,
            requirement: "next-to-nearest-neighbor blocks need N divisible by 4",
        });
    }
    let mut pairs = Vec::with_capacity(n / 2);
    for block in 0..n / 4 {
        let k = 4 * block;
        pairs.push((k + 1, k + 3));
        pairs.push((k + 2, k + 4));
    }
    PairingConfiguration::new(n, pairs, Vec::new())
}

/// Majumdar-Ghosh dimer covering of the even ring: pairs (2k, 2k+1) with the
/// wrap-around pair (N, 1). `offset = false` selects this covering;
/// `offset = true` selects the partner covering (2k-1, 2k) without wrap.
pub fn majumdar_ghosh(n: usize, offset: bool) -> Result<PairingConfiguration> {
    require_even(n)?;
    if n < 4 {
        return Err(Error::ChainTooShort { n, min: 4 });
    }
    let pairs: Vec<(usize, usize)> = if offset {
        (1..=n / 2).map(|k| (2 * k - 1, 2 * k)).collect()
    } else {
        let mut p: Vec<(usize, usize)> = (1..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
        p.push((1, n)); // wrap-around bond, normalized to j < k
        p
    };
    PairingConfiguration::new(n, pairs, Vec::new())
}

/// Builds the pure state of a pairing configuration: the tensor product of
/// singlets (|01> - |10>)/sqrt(2) (lower site index first) over the pairs and
/// Bloch-vector qubits over the singles.
pub fn singlet_pairing_state(config: &PairingConfiguration) -> Result<PureState> {
    config.validate()?;
    let n = config.n;
    let dim = 1usize << n;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let single_amps: Vec<(usize, [Complex64; 2])> = config
        .singles
        .iter()
        .map(|s| (s.site, bloch_qubit(&s.bloch)))
        .collect();
    let mut amp = DVector::zeros(dim);
    'basis: for idx in 0..dim {
        let mut value = Complex64::new(1.0, 0.0);
        for &(j, k) in &config.pairs {
            let bj = idx >> (n - j) & 1;
            let bk = idx >> (n - k) & 1;
            match (bj, bk) {
                (0, 1) => value *= inv_sqrt2,
                (1, 0) => value *= -inv_sqrt2,
                _ => continue 'basis, // parallel spins carry no weight
            }
        }
        for &(site, q) in &single_amps {
            let b = idx >> (n - site) & 1;
            value *= q[b];
        }
        amp[idx] = value;
    }
    PureState::new(n, amp)
}

/// Product of arbitrary pure blocks over disjoint site sets covering the
/// whole chain. Within a block, the listed site order fixes the block
/// state's qubit order, so blocks may interleave or cross freely.
pub fn block_product_state(n: usize, blocks: &[(Vec<usize>, PureState)]) -> Result<PureState> {
    let mut seen = vec![false; n + 1];
    for (sites, block) in blocks {
        if block.n_qubits() != sites.len() {
            return Err(Error::DimensionMismatch {
                expected: 1 << sites.len(),
                found: block.dim(),
            });
        }
        for &site in sites {
            if site == 0 || site > n {
                return Err(Error::SiteOutOfRange { site, n });
            }
            if seen[site] {
                return Err(Error::InvalidPairing {
                    reason: format!("site {site} appears in more than one block"),
                });
            }
            seen[site] = true;
        }
    }
    if let Some(missing) = (1..=n).find(|&site| !seen[site]) {
        return Err(Error::InvalidPairing {
            reason: format!("site {missing} is not covered by any block"),
        });
    }
    let dim = 1usize << n;
    let mut amp = DVector::zeros(dim);
    for idx in 0..dim {
        let mut value = Complex64::new(1.0, 0.0);
        for (sites, block) in blocks {
            let mut sub = 0usize;
            for &site in sites {
                sub = (sub << 1) | (idx >> (n - site) & 1);
            }
            value *= block.amplitudes()[sub];
        }
        amp[idx] = value;
    }
    PureState::new(n, amp)
}

/// Single-qubit amplitudes (spin up, spin down) for a unit Bloch vector.
fn bloch_qubit(bloch: &[f64; 3]) -> [Complex64; 2] {
    let theta = bloch[2].clamp(-1.0, 1.0).acos();
    let phi = bloch[1].atan2(bloch[0]);
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// Product state over the chain from one unit Bloch vector per site.
pub fn product_state(blochs: &[[f64; 3]]) -> Result<PureState> {
    let n = blochs.len();
    if n < 1 {
        return Err(Error::ChainTooShort { n, min: 1 });
    }
    for bloch in blochs {
        let norm = (bloch[0].powi(2) + bloch[1].powi(2) + bloch[2].powi(2)).sqrt();
        if (norm - 1.0).abs() > tol::BLOCH_TOL {
            return Err(Error::InvalidBloch { norm });
        }
    }
    let qubits: Vec<[Complex64; 2]> = blochs.iter().map(bloch_qubit).collect();
    let dim = 1usize << n;
    let mut amp = DVector::zeros(dim);
    for idx in 0..dim {
        let mut value = Complex64::new(1.0, 0.0);
        for (site0, q) in qubits.iter().enumerate() {
            let b = idx >> (n - 1 - site0) & 1;
            value *= q[b];
        }
        amp[idx] = value;
    }
    PureState::new(n, amp)
}

/// The domain wall |up^(N/2) down^(N/2)>, even N.
pub fn domain_wall_state(n: usize) -> Result<PureState> {
    require_even(n)?;
    // Sites 1..N/2 up (bit 0), sites N/2+1..N down (bit 1): low N/2 bits set.
    let index = (1usize << (n / 2)) - 1;
    PureState::basis_state(n, index)
}

/// Bloch vectors of the planar spiral x_j = (cos 2 pi j/N, sin 2 pi j/N, 0),
/// which attains the circulant classical minimum of the chi quadratic form.
pub fn spiral_blochs(n: usize) -> Vec<[f64; 3]> {
    (1..=n)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            [angle.cos(), angle.sin(), 0.0]
        })
        .collect()
}

/// Convex mixture of density matrices with the given weights.
pub fn mixture(states: &[DensityMatrix], weights: &[f64]) -> Result<DensityMatrix> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::InvalidWeights {
            reason: format!(
                "need matching nonempty lists, got {} states and {} weights",
                states.len(),
                weights.len()
            ),
        });
    }
    if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidWeights {
            reason: "weights must be finite and nonnegative".into(),
        });
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > tol::NORM_TOL {
        return Err(Error::InvalidWeights {
            reason: format!("weights sum to {total}, expected 1"),
        });
    }
    let dim = states[0].dim();
    let n = states[0].n_qubits();
    let mut acc = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
    for (rho, &w) in states.iter().zip(weights) {
        if rho.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rho.dim(),
            });
        }
        acc += rho.matrix().scale(w);
    }
    // Convex mixtures of density matrices stay valid by construction.
    Ok(DensityMatrix::from_parts_unchecked(
        n,
        DenseOperator::new(acc)?,
    ))
}
