//! Concatenated block codes: a Reed–Solomon outer code over GF(2^k_inner)
//! repairs the few blocks whose inner decoder fails.
//!
//! [`ConcatMemoryless`] targets channels that pick a uniformly random noise
//! vector per block: its inner codes are syndrome codes whose seeds come
//! from a fixed public schedule, so the whole construction shares zero
//! random bits and is fully deterministic. [`ConcatPiecewise`] targets
//! product-graph channels that distort each block adversarially: its inner
//! codes are pairwise-hash codes with a fresh 2n-bit seed per block, for
//! 2nD shared bits in total.

use std::sync::Arc;

use crate::bitlinalg::BitVector;
use crate::channels::ChannelModel;
use crate::codes::{
    check_rate_bound, expect_len, Code, CodeError, DecodeFailure, Decoder, HammingHashCode,
    RsOuterCode, SyndromeCode,
};
use crate::fingerprint::{log2_inverse_ceil, LinearFingerprinter, RandomLinearFingerprinter};
use crate::seedmix;

/// Parameters of the per-block inner code.
#[derive(Debug, Clone, Copy)]
pub struct InnerParams {
    pub n: usize,
    pub t: u32,
    pub epsilon: f64,
}

/// Parameters of the outer code: S message symbols into D blocks.
#[derive(Debug, Clone, Copy)]
pub struct OuterParams {
    pub message_symbols: usize,
    pub blocks: usize,
}

const MEMORYLESS_SCHEDULE_LABEL: u64 = 0x0063_6f6e_636d_656d; // "conc mem"

/// Builds the deterministic memoryless concatenation.
pub fn concat_code_memoryless(
    inner: InnerParams,
    outer: OuterParams,
) -> Result<ConcatMemoryless, CodeError> {
    ConcatMemoryless::new(inner, outer)
}

/// Builds the piecewise concatenation with per-block hash codes.
pub fn concat_code_piecewise(
    inner: InnerParams,
    outer: OuterParams,
) -> Result<ConcatPiecewise, CodeError> {
    ConcatPiecewise::new(inner, outer)
}

pub struct ConcatMemoryless {
    inner: SyndromeCode,
    outer: RsOuterCode,
    block_seeds: Vec<BitVector>,
    epsilon_word: f64,
}

impl ConcatMemoryless {
    pub fn new(inner: InnerParams, outer: OuterParams) -> Result<Self, CodeError> {
        let fp = RandomLinearFingerprinter::new(
            inner.n,
            inner.t,
            inner.epsilon,
            MEMORYLESS_SCHEDULE_LABEL,
        )
        .map_err(|e| CodeError::BadParams(e.to_string()))?;
        let out_len = fp.out_len();
        let inner_code = SyndromeCode::new(Arc::new(fp), inner.t, inner.epsilon)?;
        let k_inner = inner_code.k();
        let outer_code = RsOuterCode::new(outer.message_symbols, outer.blocks, k_inner as u32)
            .map_err(|e| CodeError::BadParams(e.to_string()))?;
        // Calibration: the expected fraction of failing blocks (union bound
        // over a full-size noise set) must sit below the outer correction
        // fraction beta.
        let expected_block_failure =
            ((1u64 << inner.t) - 1) as f64 * (2.0f64).powi(-(out_len as i32));
        if expected_block_failure >= outer_code.beta() {
            return Err(CodeError::BadParams(format!(
                "expected inner failure {expected_block_failure:.4} not below beta {:.4}",
                outer_code.beta()
            )));
        }
        let d = outer.blocks as f64;
        let gamma = outer_code.correctable() as f64 - expected_block_failure * d;
        let epsilon_word = (-2.0 * gamma * gamma / d).exp();
        check_rate_bound(
            outer.blocks * inner.n,
            outer.message_symbols * k_inner,
            inner.t,
            epsilon_word,
        )?;
        let seed_bits = inner_code.seed_bits();
        let block_seeds = (0..outer.blocks)
            .map(|i| {
                let mut rng = seedmix::rng_from_parts(&[MEMORYLESS_SCHEDULE_LABEL, i as u64]);
                BitVector::random(seed_bits, &mut rng)
            })
            .collect();
        Ok(Self {
            inner: inner_code,
            outer: outer_code,
            block_seeds,
            epsilon_word,
        })
    }

    pub fn inner(&self) -> &SyndromeCode {
        &self.inner
    }

    pub fn outer(&self) -> &RsOuterCode {
        &self.outer
    }

    /// The fixed public seed schedule, one inner seed per block.
    pub fn block_seeds(&self) -> &[BitVector] {
        &self.block_seeds
    }

    pub fn blocks(&self) -> usize {
        self.outer.codeword_symbols()
    }

    fn message_symbols_of(&self, m: &BitVector) -> Vec<u64> {
        let k_inner = self.inner.k();
        (0..self.outer.message_symbols())
            .map(|i| m.slice(i * k_inner, k_inner).to_u64())
            .collect()
    }
}

impl Code for ConcatMemoryless {
    fn n(&self) -> usize {
        self.blocks() * self.inner.n()
    }

    fn k(&self) -> usize {
        self.outer.message_symbols() * self.inner.k()
    }

    fn t(&self) -> u32 {
        self.inner.t()
    }

    fn epsilon(&self) -> f64 {
        self.epsilon_word
    }

    /// Zero shared randomness: the seed schedule is public.
    fn seed_bits(&self) -> usize {
        0
    }

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError> {
        expect_len(m, self.k(), "message")?;
        expect_len(rho, 0, "seed")?;
        let symbols = self
            .outer
            .encode(&self.message_symbols_of(m))
            .expect("length checked");
        let k_inner = self.inner.k();
        let mut out = BitVector::zeros(0);
        for (i, &c) in symbols.iter().enumerate() {
            let block = self
                .inner
                .encode(&BitVector::from_u64(c, k_inner), &self.block_seeds[i])?;
            out = out.concat(&block);
        }
        Ok(out)
    }

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError> {
        let (noise, blocks) = match channel {
            ChannelModel::MemorylessBlocks { noise, blocks } => (noise.clone(), *blocks),
            other => {
                return Err(CodeError::UnsupportedChannel(format!(
                    "memoryless concatenation decodes block channels, got {other:?}"
                )))
            }
        };
        if blocks != self.blocks() {
            return Err(CodeError::BadParams(format!(
                "channel has {blocks} blocks, code has {}",
                self.blocks()
            )));
        }
        let inner_dec = self.inner.decoder_for(&ChannelModel::Oblivious { noise })?;
        Ok(Box::new(ConcatMemorylessDecoder {
            inner_n: self.inner.n(),
            k_inner: self.inner.k(),
            s_symbols: self.outer.message_symbols(),
            outer: self.outer.clone(),
            block_seeds: self.block_seeds.clone(),
            inner: inner_dec,
        }))
    }
}

struct ConcatMemorylessDecoder {
    inner_n: usize,
    k_inner: usize,
    s_symbols: usize,
    outer: RsOuterCode,
    block_seeds: Vec<BitVector>,
    inner: Box<dyn Decoder>,
}

impl Decoder for ConcatMemorylessDecoder {
    fn decode(&self, yt: &BitVector, _rho: &BitVector) -> Result<BitVector, DecodeFailure> {
        let d = self.block_seeds.len();
        let mut symbols = Vec::with_capacity(d);
        for i in 0..d {
            let block = yt.slice(i * self.inner_n, self.inner_n);
            // A failed inner block becomes symbol 0; the outer code repairs it.
            let sym = self
                .inner
                .decode(&block, &self.block_seeds[i])
                .map_or(0, |m| m.to_u64());
            symbols.push(sym);
        }
        let message = self
            .outer
            .decode(&symbols)
            .map_err(|_| DecodeFailure::OuterCode)?;
        let mut out = BitVector::zeros(0);
        for &s in message.iter().take(self.s_symbols) {
            out = out.concat(&BitVector::from_u64(s, self.k_inner));
        }
        Ok(out)
    }
}

pub struct ConcatPiecewise {
    inner: HammingHashCode,
    outer: RsOuterCode,
    epsilon_word: f64,
}

impl ConcatPiecewise {
    pub fn new(inner: InnerParams, outer: OuterParams) -> Result<Self, CodeError> {
        let inner_code = HammingHashCode::new(inner.n, inner.t, inner.epsilon)?;
        let k_inner = inner_code.k();
        let outer_code = RsOuterCode::new(outer.message_symbols, outer.blocks, k_inner as u32)
            .map_err(|e| CodeError::BadParams(e.to_string()))?;
        if inner.epsilon >= outer_code.beta() {
            return Err(CodeError::BadParams(format!(
                "inner epsilon {} not below beta {:.4}",
                inner.epsilon,
                outer_code.beta()
            )));
        }
        let d = outer.blocks as f64;
        let gamma = outer_code.correctable() as f64 - inner.epsilon * d;
        let epsilon_word = (-2.0 * gamma * gamma / d).exp();
        check_rate_bound(
            outer.blocks * inner.n,
            outer.message_symbols * k_inner,
            inner.t,
            epsilon_word,
        )?;
        Ok(Self {
            inner: inner_code,
            outer: outer_code,
            epsilon_word,
        })
    }

    pub fn inner(&self) -> &HammingHashCode {
        &self.inner
    }

    pub fn outer(&self) -> &RsOuterCode {
        &self.outer
    }

    pub fn blocks(&self) -> usize {
        self.outer.codeword_symbols()
    }

    /// The outer-code symbols of a message (the per-block inner messages).
    pub fn outer_symbols(&self, m: &BitVector) -> Result<Vec<u64>, CodeError> {
        expect_len(m, self.k(), "message")?;
        let k_inner = self.inner.k();
        let symbols: Vec<u64> = (0..self.outer.message_symbols())
            .map(|i| m.slice(i * k_inner, k_inner).to_u64())
            .collect();
        Ok(self.outer.encode(&symbols).expect("length checked"))
    }

    pub fn block_seed(&self, rho: &BitVector, i: usize) -> BitVector {
        rho.slice(i * 2 * self.inner.n(), 2 * self.inner.n())
    }
}

impl Code for ConcatPiecewise {
    fn n(&self) -> usize {
        self.blocks() * self.inner.n()
    }

    fn k(&self) -> usize {
        self.outer.message_symbols() * self.inner.k()
    }

    fn t(&self) -> u32 {
        self.inner.t()
    }

    fn epsilon(&self) -> f64 {
        self.epsilon_word
    }

    /// 2n bits per block.
    fn seed_bits(&self) -> usize {
        2 * self.inner.n() * self.blocks()
    }

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError> {
        expect_len(rho, self.seed_bits(), "seed")?;
        let symbols = self.outer_symbols(m)?;
        let k_inner = self.inner.k();
        let mut out = BitVector::zeros(0);
        for (i, &c) in symbols.iter().enumerate() {
            let block = self
                .inner
                .encode(&BitVector::from_u64(c, k_inner), &self.block_seed(rho, i))?;
            out = out.concat(&block);
        }
        Ok(out)
    }

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError> {
        let graphs = match channel {
            ChannelModel::PiecewiseBlocks { graphs } => graphs.clone(),
            other => {
                return Err(CodeError::UnsupportedChannel(format!(
                    "piecewise concatenation decodes product-graph channels, got {other:?}"
                )))
            }
        };
        if graphs.len() != self.blocks() {
            return Err(CodeError::BadParams(format!(
                "channel has {} blocks, code has {}",
                graphs.len(),
                self.blocks()
            )));
        }
        let block_decoders: Result<Vec<_>, _> = graphs
            .into_iter()
            .map(|graph| self.inner.decoder_for(&ChannelModel::Hamming { graph }))
            .collect();
        Ok(Box::new(ConcatPiecewiseDecoder {
            inner_n: self.inner.n(),
            k_inner: self.inner.k(),
            s_symbols: self.outer.message_symbols(),
            outer: self.outer.clone(),
            block_decoders: block_decoders?,
        }))
    }
}

struct ConcatPiecewiseDecoder {
    inner_n: usize,
    k_inner: usize,
    s_symbols: usize,
    outer: RsOuterCode,
    block_decoders: Vec<Box<dyn Decoder>>,
}

impl Decoder for ConcatPiecewiseDecoder {
    fn decode(&self, yt: &BitVector, rho: &BitVector) -> Result<BitVector, DecodeFailure> {
        let d = self.block_decoders.len();
        let mut symbols = Vec::with_capacity(d);
        for (i, dec) in self.block_decoders.iter().enumerate() {
            let block = yt.slice(i * self.inner_n, self.inner_n);
            let seed = rho.slice(i * 2 * self.inner_n, 2 * self.inner_n);
            symbols.push(dec.decode(&block, &seed).map_or(0, |m| m.to_u64()));
        }
        let message = self
            .outer
            .decode(&symbols)
            .map_err(|_| DecodeFailure::OuterCode)?;
        let mut out = BitVector::zeros(0);
        for &s in message.iter().take(self.s_symbols) {
            out = out.concat(&BitVector::from_u64(s, self.k_inner));
        }
        Ok(out)
    }
}

/// Rate of a concatenated code as (S·k)/(D·n), for reporting.
pub fn concat_rate(inner: InnerParams, outer: OuterParams) -> Result<f64, CodeError> {
    let j = log2_inverse_ceil(inner.epsilon).map_err(|e| CodeError::BadParams(e.to_string()))?;
    let k_inner = inner
        .n
        .checked_sub(inner.t as usize + j as usize)
        .ok_or_else(|| CodeError::BadParams("no message bits".into()))?;
    Ok((outer.message_symbols * k_inner) as f64 / (outer.blocks * inner.n) as f64)
}
