//! Seeded, splittable randomness and Haar-distributed sampling.
//!
//! All stochastic routines take an explicit `u64` seed so every run is
//! reproducible. Independent substreams (per sample, per start) are derived
//! by mixing the seed with the substream index, so work can be distributed
//! without coordinating a shared generator.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::PureState;

/// Default seed used by the CLI and examples when none is given.
pub const DEFAULT_SEED: u64 = 0x0045_4E54_5749_4454; // "ENTWIDT" tag bits

/// SplitMix64 finalizer; decorrelates consecutive indices.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A deterministic generator for the given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent generator for substream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed) ^ splitmix64(stream.wrapping_mul(0xA24B_AED4_963E_E407)))
}

/// A standard complex Gaussian sample.
pub fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// A Haar-random pure state of `n` qubits (normalized complex Gaussian vector).
pub fn haar_state(n: usize, rng: &mut ChaCha8Rng) -> Result<PureState> {
    let dim = 1usize << n;
    let amp = DVector::from_fn(dim, |_, _| complex_normal(rng));
    PureState::normalized(n, amp)
}

/// A random unit Bloch vector (uniform on the sphere).
pub fn random_bloch(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-12 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

/// Uniform weights on the probability simplex (symmetric Dirichlet with unit
/// concentration), via normalized exponentials.
pub fn simplex_weights(k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    assert!(k >= 1, "need at least one component");
    let mut w: Vec<f64> = (0..k)
        .map(|_| {
            let u: f64 = rng.random::<f64>();
            -(1.0 - u).ln() // exponential(1); 1-u avoids ln(0)
        })
        .collect();
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    w
}
