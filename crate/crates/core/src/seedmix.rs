//! Deterministic seed derivation.
//!
//! Every random choice in the crate flows through ChaCha12 streams keyed
//! here. A key is derived by absorbing a sequence of 64-bit parts into a
//! SplitMix64 state and squeezing four words; the parts are domain labels,
//! trial indices, or raw seed material. The same parts always produce the
//! same stream, independent of call order anywhere else.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::bitlinalg::BitVector;

const GOLDEN: u64 = 0x9e3779b97f4a7c15;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Absorbs the parts and squeezes a 32-byte ChaCha key.
pub fn derive_key(parts: &[u64]) -> [u8; 32] {
    let mut state: u64 = 0x243f6a8885a308d3;
    for &p in parts {
        state ^= p;
        splitmix(&mut state);
    }
    let mut key = [0u8; 32];
    for i in 0..4 {
        key[8 * i..8 * (i + 1)].copy_from_slice(&splitmix(&mut state).to_le_bytes());
    }
    key
}

/// A ChaCha12 stream keyed by the given parts.
pub fn rng_from_parts(parts: &[u64]) -> ChaCha12Rng {
    ChaCha12Rng::from_seed(derive_key(parts))
}

/// A ChaCha12 stream keyed by a label and the raw bits of a seed string.
pub fn rng_from_bits(label: u64, bits: &BitVector) -> ChaCha12Rng {
    let mut parts = vec![label, bits.len() as u64];
    parts.extend_from_slice(bits.words());
    rng_from_parts(&parts)
}
