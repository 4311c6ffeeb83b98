//! The code constructions.
//!
//! Every code implements [`Code`]: a channel-independent encoder over shared
//! randomness plus a factory of channel-specific decoders. Decoding failure
//! is a typed result, never an arbitrary message, so failure accounting in
//! experiments is exact. Every constructor asserts the sphere-packing rate
//! bound k/n <= 1 - t/n + (1 + log2(1/(1-eps)))/n and rejects violating
//! parameter sets.

mod additive;
mod concat;
mod hash;
mod rs_outer;
mod syndrome;
mod toy;

pub use additive::{additive_hamming_wrap, AdditiveWrap};
pub use concat::{
    concat_code_memoryless, concat_code_piecewise, concat_rate, ConcatMemoryless, ConcatPiecewise,
    InnerParams, OuterParams,
};
pub use hash::{hamming_hash_code, HammingHashCode};
pub use rs_outer::{rs_outer_code, RsError, RsOuterCode};
pub use syndrome::{syndrome_code, SyndromeCode};
pub use toy::{random_code_no_shared, RandomToyCode, ToyParams};

use rand::RngCore;
use thiserror::Error;

use crate::bitlinalg::BitVector;
use crate::channels::ChannelModel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("rate bound violated: k/n = {rate:.4} exceeds {bound:.4}")]
    RateBoundViolation { rate: f64, bound: f64 },
    #[error("channel not supported by this code: {0}")]
    UnsupportedChannel(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

/// A decoding failure. All variants count as failures in experiments.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeFailure {
    #[error("no noise candidate matches the syndrome")]
    NotFound,
    #[error("two or more candidates match")]
    Ambiguous,
    #[error("recovered word is outside the message range")]
    MessageRange,
    #[error("outer code could not correct the block errors")]
    OuterCode,
}

/// A channel-specific decoder. Pure given (x̃, ρ); implementations may keep
/// internal per-seed tables, built once per seed and immutable afterwards.
pub trait Decoder: Send + Sync {
    fn decode(&self, xt: &BitVector, rho: &BitVector) -> Result<BitVector, DecodeFailure>;

    /// For oblivious decoders of linear codes: the failure indicator for each
    /// element of the channel's noise set under this seed (independent of the
    /// message). Fast path for worst-noise selection; None when unsupported.
    fn noise_failure_profile(&self, _rho: &BitVector) -> Option<Vec<bool>> {
        None
    }
}

/// A private code: channel-independent encoder plus per-channel decoders,
/// sharing `seed_bits` random bits.
pub trait Code: Send + Sync {
    /// Codeword length in bits.
    fn n(&self) -> usize;
    /// Message length in bits.
    fn k(&self) -> usize;
    /// Tolerated noise level (log2 of the distortion bound).
    fn t(&self) -> u32;
    /// Rated failure probability.
    fn epsilon(&self) -> f64;
    /// Shared-randomness length d in bits.
    fn seed_bits(&self) -> usize;

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError>;

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError>;

    /// Samples a seed uniformly from the fiber {ρ : encode(m, ρ) = x}, when
    /// the construction supports it. Used by quantifier-correct adversarial
    /// channel functions to probe a decoder without the trial seed.
    fn seed_given_codeword(
        &self,
        _m: &BitVector,
        _x: &BitVector,
        _rng: &mut dyn RngCore,
    ) -> Option<BitVector> {
        None
    }

    fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }
}

/// The sphere-packing bound on the rate of a (t, eps)-resilient private code.
pub fn sphere_packing_rate_bound(n: usize, t: u32, epsilon: f64) -> f64 {
    let n = n as f64;
    1.0 - t as f64 / n + (1.0 + (1.0 / (1.0 - epsilon)).log2()) / n
}

/// Constructor-time guard: rejects parameter sets whose rate exceeds the
/// sphere-packing bound.
pub(crate) fn check_rate_bound(n: usize, k: usize, t: u32, epsilon: f64) -> Result<(), CodeError> {
    let rate = k as f64 / n as f64;
    let bound = sphere_packing_rate_bound(n, t, epsilon);
    if rate > bound + 1e-12 {
        return Err(CodeError::RateBoundViolation { rate, bound });
    }
    Ok(())
}

pub(crate) fn expect_len(v: &BitVector, len: usize, what: &str) -> Result<(), CodeError> {
    if v.len() != len {
        return Err(CodeError::LengthMismatch(format!(
            "{what} has {} bits, expected {len}",
            v.len()
        )));
    }
    Ok(())
}
