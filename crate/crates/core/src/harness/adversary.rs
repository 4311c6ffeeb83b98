//! Quantifier-correct adversarial strategies.
//!
//! Resilience quantifies over channels and channel functions chosen before
//! the shared randomness is drawn, so an adversary here may study the code
//! and the decoder as much as it likes but never sees the trial seed. The
//! noise selectors and channel oracles in this module probe the decoder
//! with their own derived seed streams, making each choice a fixed function
//! of public data (and, for channel functions, of the observed codeword).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::bitlinalg::BitVector;
use crate::channels::{ChannelOracle, NoiseSet};
use crate::codes::{Code, Decoder};
use crate::seedmix;

const LANE_WORST_NOISE: u64 = 0x77667378; // "wfsx"
const LANE_BRUTEFORCE: u64 = 0x62666f72; // "bfor"

/// Scores every element of the noise set by decoding failures over probe
/// seeds and returns the index of the worst one. Uses the decoder's
/// message-independent failure profile when available, otherwise decodes
/// Enc(m) ⊕ e directly for every e.
pub fn select_worst_noise(
    code: &Arc<dyn Code>,
    decoder: &dyn Decoder,
    noise: &NoiseSet,
    messages: &[BitVector],
    probes: u64,
    key: u64,
) -> usize {
    let mut scores = vec![0u64; noise.len()];
    let mut rng = seedmix::rng_from_parts(&[LANE_WORST_NOISE, key]);
    for p in 0..probes.max(1) {
        let rho = BitVector::random(code.seed_bits(), &mut rng);
        if let Some(profile) = decoder.noise_failure_profile(&rho) {
            for (s, failed) in scores.iter_mut().zip(&profile) {
                if *failed {
                    *s += 1;
                }
            }
        } else {
            let m = &messages[(p % messages.len() as u64) as usize];
            let Ok(x) = code.encode(m, &rho) else {
                continue;
            };
            for (s, e) in scores.iter_mut().zip(noise.elements()) {
                if decoder.decode(&x.xor(e), &rho).ok().as_ref() != Some(m) {
                    *s += 1;
                }
            }
        }
    }
    scores
        .iter()
        .enumerate()
        .max_by_key(|&(i, s)| (s, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Brute force over neighbors against the target decoder: for each observed
/// codeword x the oracle draws probe seeds from the fiber
/// {ρ : Enc_ρ(m) = x} and picks the neighbor on which decoding fails most
/// often. The probe stream is keyed by x, so the pick is a fixed function
/// of x; decisions are memoized.
///
/// Codes without a fiber sampler fall back to the first neighbor that
/// differs from the input.
pub struct BruteforceNeighborOracle {
    code: Arc<dyn Code>,
    decoder: Arc<dyn Decoder>,
    message: BitVector,
    probes: u32,
    key: u64,
    memo: Mutex<HashMap<BitVector, usize>>,
}

impl BruteforceNeighborOracle {
    pub fn new(
        code: Arc<dyn Code>,
        decoder: Arc<dyn Decoder>,
        message: BitVector,
        probes: u32,
        key: u64,
    ) -> Self {
        Self {
            code,
            decoder,
            message,
            probes,
            key,
            memo: Mutex::new(HashMap::new()),
        }
    }

    fn choose(&self, x: &BitVector, neighbors: &[BitVector]) -> usize {
        let mut parts = vec![LANE_BRUTEFORCE, self.key, x.len() as u64];
        parts.extend_from_slice(x.words());
        let mut rng = seedmix::rng_from_parts(&parts);
        let seeds: Vec<BitVector> = (0..self.probes)
            .filter_map(|_| self.code.seed_given_codeword(&self.message, x, &mut rng))
            .collect();
        if seeds.is_empty() {
            return neighbors.iter().position(|y| y != x).unwrap_or(0);
        }
        let mut best = 0usize;
        let mut best_score = 0u32;
        for (j, y) in neighbors.iter().enumerate() {
            let score = seeds
                .iter()
                .filter(|rho| self.decoder.decode(y, rho).ok().as_ref() != Some(&self.message))
                .count() as u32;
            if score > best_score {
                best = j;
                best_score = score;
            }
        }
        best
    }
}

impl ChannelOracle for BruteforceNeighborOracle {
    fn pick(&self, x: &BitVector, neighbors: &[BitVector]) -> usize {
        if let Some(&i) = self.memo.lock().unwrap().get(x) {
            return i;
        }
        let i = self.choose(x, neighbors);
        self.memo.lock().unwrap().insert(x.clone(), i);
        i
    }
}
