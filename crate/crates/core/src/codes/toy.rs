//! A toy random code without shared randomness, at desk scale only.
//!
//! The encoder table is sampled uniformly per (seed, message); the decoder
//! ignores the seed entirely and greedy-searches triples (ρ', m', e') in
//! row-major order, returning the first message whose perturbed codeword
//! matches the received word. Decoding a transmitted word fails for at most
//! as many seeds as the received word collides with other messages'
//! perturbed codewords, which the overlap statistic counts exactly.

use std::collections::HashMap;

use crate::bitlinalg::BitVector;
use crate::channels::{ChannelModel, NoiseSet};
use crate::codes::{check_rate_bound, expect_len, Code, CodeError, DecodeFailure, Decoder};
use crate::seedmix;

#[derive(Debug, Clone, Copy)]
pub struct ToyParams {
    pub n: usize,
    pub k: usize,
    pub t: u32,
    pub epsilon: f64,
    /// Number of encoder seeds R (a power of two).
    pub r_seeds: usize,
    /// Sampling seed of the encoder table.
    pub seed: u64,
}

pub struct RandomToyCode {
    params: ToyParams,
    /// table[seed][message]
    table: Vec<Vec<BitVector>>,
}

/// Samples a toy random code. Scale limits: n <= 20, k <= 4, t <= 6.
pub fn random_code_no_shared(params: ToyParams) -> Result<RandomToyCode, CodeError> {
    RandomToyCode::new(params)
}

impl RandomToyCode {
    pub fn new(params: ToyParams) -> Result<Self, CodeError> {
        if params.n > 20 || params.k > 4 || params.t > 6 {
            return Err(CodeError::BadParams(
                "toy scale is n <= 20, k <= 4, t <= 6".into(),
            ));
        }
        if params.k == 0 || params.k >= params.n {
            return Err(CodeError::BadParams("need 0 < k < n".into()));
        }
        if !params.r_seeds.is_power_of_two() {
            return Err(CodeError::BadParams(
                "seed count R must be a power of two".into(),
            ));
        }
        if !(params.epsilon > 0.0 && params.epsilon < 1.0) {
            return Err(CodeError::BadParams("epsilon outside (0,1)".into()));
        }
        check_rate_bound(params.n, params.k, params.t, params.epsilon)?;
        let mut rng = seedmix::rng_from_parts(&[0x70795f, params.seed]);
        let table = (0..params.r_seeds)
            .map(|_| {
                (0..1u64 << params.k)
                    .map(|_| BitVector::random(params.n, &mut rng))
                    .collect()
            })
            .collect();
        Ok(Self { params, table })
    }

    pub fn params(&self) -> ToyParams {
        self.params
    }

    pub fn num_seeds(&self) -> usize {
        self.params.r_seeds
    }

    /// The overlap statistic for (m, e): the number of seeds ρ for which
    /// Enc_ρ(m) ⊕ e falls inside {Enc_ρ'(m') ⊕ e' : m' ≠ m, ρ', e' ∈ E}.
    /// Greedy decoding of m under fixed noise e fails for at most this many
    /// seeds, so overlap <= ε·R certifies failure rate <= ε.
    pub fn overlap_count(&self, m: u64, e: &BitVector, noise: &NoiseSet) -> usize {
        let mut others = std::collections::HashSet::new();
        for row in &self.table {
            for (m2, x) in row.iter().enumerate() {
                if m2 as u64 == m {
                    continue;
                }
                for e2 in noise.elements() {
                    others.insert(x.xor(e2).words().to_vec());
                }
            }
        }
        self.table
            .iter()
            .filter(|row| others.contains(row[m as usize].xor(e).words()))
            .count()
    }
}

impl Code for RandomToyCode {
    fn n(&self) -> usize {
        self.params.n
    }

    fn k(&self) -> usize {
        self.params.k
    }

    fn t(&self) -> u32 {
        self.params.t
    }

    fn epsilon(&self) -> f64 {
        self.params.epsilon
    }

    /// Encoder-side randomness only; the decoder never reads it.
    fn seed_bits(&self) -> usize {
        self.params.r_seeds.trailing_zeros() as usize
    }

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError> {
        expect_len(m, self.params.k, "message")?;
        expect_len(rho, self.seed_bits(), "seed")?;
        Ok(self.table[rho.to_u64() as usize][m.to_u64() as usize].clone())
    }

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError> {
        let noise = match channel {
            ChannelModel::Oblivious { noise } => noise.clone(),
            other => {
                return Err(CodeError::UnsupportedChannel(format!(
                    "toy code decodes oblivious channels, got {other:?}"
                )))
            }
        };
        if noise.n() != self.params.n {
            return Err(CodeError::LengthMismatch("noise set width".into()));
        }
        // First match in (ρ', m', e') row-major order.
        let mut first_match: HashMap<Vec<u64>, u64> = HashMap::new();
        for row in &self.table {
            for (m2, x) in row.iter().enumerate() {
                for e2 in noise.elements() {
                    first_match
                        .entry(x.xor(e2).words().to_vec())
                        .or_insert(m2 as u64);
                }
            }
        }
        Ok(Box::new(ToyGreedyDecoder {
            k: self.params.k,
            first_match,
        }))
    }
}

struct ToyGreedyDecoder {
    k: usize,
    first_match: HashMap<Vec<u64>, u64>,
}

impl Decoder for ToyGreedyDecoder {
    fn decode(&self, xt: &BitVector, _rho: &BitVector) -> Result<BitVector, DecodeFailure> {
        self.first_match
            .get(xt.words())
            .map(|&m| BitVector::from_u64(m, self.k))
            .ok_or(DecodeFailure::NotFound)
    }
}
