//! The pairwise-independent-hash code for the Hamming scenario.
//!
//! The seed is a pair (a, b) of GF(2^n) elements, d = 2n bits. Message m
//! (0-based, k bits) embeds as the field element m + 1, excluding zero so
//! that a = 0 cannot make messages collide silently, and encodes as
//! a·(m+1) ⊕ b. Since the hash pair is pairwise independent, any fixed
//! channel function confuses two messages with probability at most K·T/N,
//! which the parameter rule k = n − t − log2(1/ε) keeps at ε.
//!
//! The decoder for a graph channel enumerates the left neighbors of the
//! received word and keeps the unique message whose encoding lands there.

use rand::RngCore;

use crate::bitlinalg::BitVector;
use crate::channels::{ChannelGraph, ChannelModel};
use crate::codes::{check_rate_bound, expect_len, Code, CodeError, DecodeFailure, Decoder};
use crate::field::FieldContext;

#[derive(Debug, Clone)]
pub struct HammingHashCode {
    n: usize,
    t: u32,
    log_inv_eps: u32,
    k: usize,
    ctx: FieldContext,
}

/// Builds the hash code. `epsilon` must be a power of two.
pub fn hamming_hash_code(n: usize, t: u32, epsilon: f64) -> Result<HammingHashCode, CodeError> {
    HammingHashCode::new(n, t, epsilon)
}

impl HammingHashCode {
    pub fn new(n: usize, t: u32, epsilon: f64) -> Result<Self, CodeError> {
        if n == 0 || n > 64 {
            return Err(CodeError::BadParams(format!(
                "n = {n} outside the 1..=64 desk scale"
            )));
        }
        let log_inv_eps = power_of_two_log(epsilon)?;
        let used = t as usize + log_inv_eps as usize;
        if used >= n {
            return Err(CodeError::BadParams(format!(
                "t + log2(1/eps) = {used} leaves no message bits at n = {n}"
            )));
        }
        let k = n - used;
        check_rate_bound(n, k, t, epsilon)?;
        let ctx = FieldContext::new(n as u32).map_err(|e| CodeError::BadParams(e.to_string()))?;
        Ok(Self {
            n,
            t,
            log_inv_eps,
            k,
            ctx,
        })
    }

    fn split_seed(&self, rho: &BitVector) -> (u64, u64) {
        let a = rho.slice(0, self.n).to_u64();
        let b = rho.slice(self.n, self.n).to_u64();
        (a, b)
    }

    /// Number of messages K = 2^k.
    pub fn num_messages(&self) -> u64 {
        1u64 << self.k
    }

    pub fn field(&self) -> FieldContext {
        self.ctx
    }
}

fn power_of_two_log(epsilon: f64) -> Result<u32, CodeError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(CodeError::BadParams(format!(
            "epsilon {epsilon} outside (0,1)"
        )));
    }
    let j = (1.0 / epsilon).log2().round() as u32;
    if ((2.0f64).powi(-(j as i32)) - epsilon).abs() > 1e-12 {
        return Err(CodeError::BadParams(format!(
            "epsilon {epsilon} is not a power of two"
        )));
    }
    Ok(j)
}

impl Code for HammingHashCode {
    fn n(&self) -> usize {
        self.n
    }

    fn k(&self) -> usize {
        self.k
    }

    fn t(&self) -> u32 {
        self.t
    }

    fn epsilon(&self) -> f64 {
        (2.0f64).powi(-(self.log_inv_eps as i32))
    }

    fn seed_bits(&self) -> usize {
        2 * self.n
    }

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError> {
        expect_len(m, self.k, "message")?;
        expect_len(rho, self.seed_bits(), "seed")?;
        let (a, b) = self.split_seed(rho);
        let value = m.to_u64() + 1;
        Ok(BitVector::from_u64(self.ctx.mul(a, value) ^ b, self.n))
    }

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError> {
        let graph = match channel {
            ChannelModel::Hamming { graph } => graph.clone(),
            other => {
                return Err(CodeError::UnsupportedChannel(format!(
                    "hash code decodes Hamming graph channels, got {other:?}"
                )))
            }
        };
        if graph.n() != self.n {
            return Err(CodeError::LengthMismatch(format!(
                "graph over {} bits, code over {}",
                graph.n(),
                self.n
            )));
        }
        Ok(Box::new(HashDecoder {
            code: self.clone(),
            graph,
        }))
    }

    fn seed_given_codeword(
        &self,
        m: &BitVector,
        x: &BitVector,
        rng: &mut dyn RngCore,
    ) -> Option<BitVector> {
        if m.len() != self.k || x.len() != self.n {
            return None;
        }
        // The fiber over (m, x) is {(a, x ⊕ a·(m+1)) : a ∈ GF(2^n)}.
        let a = BitVector::random(self.n, rng).to_u64();
        let b = x.to_u64() ^ self.ctx.mul(a, m.to_u64() + 1);
        Some(BitVector::from_u64(a, self.n).concat(&BitVector::from_u64(b, self.n)))
    }
}

pub struct HashDecoder {
    code: HammingHashCode,
    graph: ChannelGraph,
}

impl Decoder for HashDecoder {
    fn decode(&self, yt: &BitVector, rho: &BitVector) -> Result<BitVector, DecodeFailure> {
        let (a, b) = self.code.split_seed(rho);
        let k_messages = self.code.num_messages();
        let mut found: Option<u64> = None;
        if a == 0 {
            // Every message encodes to b.
            return Err(DecodeFailure::Ambiguous);
        }
        let a_inv = self.code.ctx.inv(a).expect("a is nonzero");
        for c in self.graph.left_neighbors(yt) {
            let value = self.code.ctx.mul(c.to_u64() ^ b, a_inv);
            if (1..=k_messages).contains(&value) {
                let m = value - 1;
                if found == Some(m) {
                    continue;
                }
                if found.is_some() {
                    return Err(DecodeFailure::Ambiguous);
                }
                found = Some(m);
            }
        }
        found
            .map(|m| BitVector::from_u64(m, self.code.k))
            .ok_or(DecodeFailure::NotFound)
    }
}
