//! Additive-Hamming masking wrapper.
//!
//! Wraps an oblivious-scenario code: the extended seed is (ρ, z) with z a
//! uniform n-bit mask, encoding adds z, decoding removes it. For a fixed ρ
//! the transmitted word is uniform and independent of ρ, so a channel that
//! sees the codeword but must add a vector from a fixed set E gains nothing
//! over the oblivious adversary: the wrapper is resilient against all
//! channel functions Ch: X → E whenever the inner code is resilient on E.

use std::sync::Arc;

use rand::RngCore;

use crate::bitlinalg::BitVector;
use crate::channels::ChannelModel;
use crate::codes::{expect_len, Code, CodeError, DecodeFailure, Decoder};

pub struct AdditiveWrap {
    inner: Arc<dyn Code>,
}

/// Wraps an oblivious-resilient code for the additive Hamming scenario.
pub fn additive_hamming_wrap(inner: Arc<dyn Code>) -> AdditiveWrap {
    AdditiveWrap { inner }
}

impl AdditiveWrap {
    pub fn inner(&self) -> &Arc<dyn Code> {
        &self.inner
    }

    fn split_seed(&self, rho: &BitVector) -> (BitVector, BitVector) {
        let d = self.inner.seed_bits();
        (rho.slice(0, d), rho.slice(d, self.inner.n()))
    }
}

impl Code for AdditiveWrap {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn k(&self) -> usize {
        self.inner.k()
    }

    fn t(&self) -> u32 {
        self.inner.t()
    }

    fn epsilon(&self) -> f64 {
        self.inner.epsilon()
    }

    fn seed_bits(&self) -> usize {
        self.inner.seed_bits() + self.inner.n()
    }

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError> {
        expect_len(rho, self.seed_bits(), "seed")?;
        let (inner_rho, z) = self.split_seed(rho);
        Ok(self.inner.encode(m, &inner_rho)?.xor(&z))
    }

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError> {
        let noise = match channel {
            ChannelModel::AdditiveHamming { noise } | ChannelModel::Oblivious { noise } => {
                noise.clone()
            }
            other => {
                return Err(CodeError::UnsupportedChannel(format!(
                    "additive wrapper decodes additive-Hamming or oblivious channels, got {other:?}"
                )))
            }
        };
        let inner_dec = self.inner.decoder_for(&ChannelModel::Oblivious { noise })?;
        Ok(Box::new(WrapDecoder {
            inner_seed_bits: self.inner.seed_bits(),
            n: self.inner.n(),
            inner: inner_dec,
        }))
    }

    fn seed_given_codeword(
        &self,
        m: &BitVector,
        x: &BitVector,
        rng: &mut dyn RngCore,
    ) -> Option<BitVector> {
        // Any inner seed fits; z is forced by the target codeword.
        let inner_rho = BitVector::random(self.inner.seed_bits(), rng);
        let inner_x = self.inner.encode(m, &inner_rho).ok()?;
        Some(inner_rho.concat(&inner_x.xor(x)))
    }
}

struct WrapDecoder {
    inner_seed_bits: usize,
    n: usize,
    inner: Box<dyn Decoder>,
}

impl Decoder for WrapDecoder {
    fn decode(&self, xt: &BitVector, rho: &BitVector) -> Result<BitVector, DecodeFailure> {
        let inner_rho = rho.slice(0, self.inner_seed_bits);
        let z = rho.slice(self.inner_seed_bits, self.n);
        self.inner.decode(&xt.xor(&z), &inner_rho)
    }

    fn noise_failure_profile(&self, rho: &BitVector) -> Option<Vec<bool>> {
        // The mask only shifts the codeword; per-noise failure is the inner one.
        self.inner
            .noise_failure_profile(&rho.slice(0, self.inner_seed_bits))
    }
}
