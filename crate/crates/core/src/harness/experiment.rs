//! The seeded Monte Carlo experiment runner.
//!
//! Quantifier order: the channel, the message list, and the noise choice (a
//! fixed vector, a channel function, or a per-trial draw from its own seed
//! lane) are all fixed before any shared-randomness seed is sampled. Every
//! random object of trial i comes from a ChaCha stream keyed by
//! (master_seed, lane, i), so reports are bit-identical across runs and
//! trial order.

use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bitlinalg::BitVector;
use crate::channels::{
    block_transmit, oblivious_transmit, BlockChannelSpec, ChannelFunction, ChannelModel,
    ChannelStrategy, NoisePick, NoiseSet,
};
use crate::codes::{
    sphere_packing_rate_bound, Code, ConcatPiecewise, Decoder, InnerParams, OuterParams,
};
use crate::harness::adversary::{select_worst_noise, BruteforceNeighborOracle};
use crate::harness::descriptors::{
    build_channel, build_code, CodeDescriptor, ExperimentSpec, MessagePolicy, NoisePolicy,
    StrategySpec,
};
use crate::harness::stats::{fraction, wilson99};
use crate::harness::HarnessError;
use crate::seedmix;

const LANE_MESSAGES: u64 = 0x6d736773; // "msgs"
const LANE_RHO: u64 = 0x72686f00; // "rho"
const LANE_NOISE: u64 = 0x6e6f6973; // "nois"

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    pub n: usize,
    pub k: usize,
    pub t: u32,
    pub d_bits: usize,
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    /// Exact fraction, failures/trials.
    pub failure_fraction: String,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub rate: f64,
    pub bound_rate: f64,
    pub margin: f64,
    pub epsilon_target: f64,
    pub pass_threshold: f64,
    pub verdict: Verdict,
    pub master_seed: u64,
    pub seconds: f64,
    pub notes: Vec<String>,
}

/// Runs the experiment and reduces the per-trial outcomes into a report.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<TrialReport, HarnessError> {
    let started = Instant::now();
    let prepared = prepare(spec)?;
    let mut failures = 0u64;
    for i in 0..spec.trials {
        if !(prepared.trial)(i) {
            failures += 1;
        }
    }
    let (wilson_lo, wilson_hi) = wilson99(failures, spec.trials);
    let pass_threshold = spec.epsilon_target * (1.0 + spec.slack_factor);
    let bound_rate = sphere_packing_rate_bound(prepared.n, prepared.t, prepared.code_epsilon);
    let rate = prepared.k as f64 / prepared.n as f64;
    Ok(TrialReport {
        n: prepared.n,
        k: prepared.k,
        t: prepared.t,
        d_bits: prepared.d_bits,
        trials: spec.trials,
        failures,
        failure_rate: failures as f64 / spec.trials as f64,
        failure_fraction: fraction(failures, spec.trials),
        wilson_lo,
        wilson_hi,
        rate,
        bound_rate,
        margin: bound_rate - rate,
        epsilon_target: spec.epsilon_target,
        pass_threshold,
        verdict: if wilson_hi <= pass_threshold {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        master_seed: spec.master_seed,
        seconds: started.elapsed().as_secs_f64(),
        notes: prepared.notes,
    })
}

/// The per-trial success outcomes, in trial order. Outcome i is a pure
/// function of (spec, master_seed, i); exposed so tests can audit seed
/// isolation and reordering.
pub fn trial_outcomes(spec: &ExperimentSpec, indices: &[u64]) -> Result<Vec<bool>, HarnessError> {
    let prepared = prepare(spec)?;
    Ok(indices.iter().map(|&i| (prepared.trial)(i)).collect())
}

struct Prepared {
    n: usize,
    k: usize,
    t: u32,
    d_bits: usize,
    code_epsilon: f64,
    notes: Vec<String>,
    /// Returns true when trial i decodes correctly.
    trial: Box<dyn Fn(u64) -> bool>,
}

fn message_list(spec: &ExperimentSpec, k: usize) -> Result<Vec<BitVector>, HarnessError> {
    match spec.message_policy {
        MessagePolicy::All => {
            if k > 16 {
                return Err(HarnessError::Config(format!(
                    "message policy 'all' needs k <= 16, got {k}"
                )));
            }
            Ok((0..1u64 << k).map(|m| BitVector::from_u64(m, k)).collect())
        }
        MessagePolicy::Random => {
            let count = spec.message_count.max(1);
            let mut rng = seedmix::rng_from_parts(&[spec.master_seed, LANE_MESSAGES]);
            Ok((0..count).map(|_| BitVector::random(k, &mut rng)).collect())
        }
    }
}

fn prepare(spec: &ExperimentSpec) -> Result<Prepared, HarnessError> {
    spec.validate()?;
    let channel = build_channel(&spec.channel)?;
    match channel {
        ChannelModel::Oblivious { noise } => prepare_additive_like(spec, noise, false),
        ChannelModel::AdditiveHamming { noise } => prepare_additive_like(spec, noise, true),
        ChannelModel::Hamming { graph } => prepare_hamming(spec, graph),
        ChannelModel::MemorylessBlocks { noise, blocks } => prepare_memoryless(spec, noise, blocks),
        ChannelModel::PiecewiseBlocks { graphs } => prepare_piecewise(spec, graphs),
    }
}

/// Oblivious and additive-Hamming scenarios share the trial shape: a noise
/// vector from E is added to the codeword. In the additive scenario the
/// selection is formally a channel function X → E; with the worst-fixed
/// policy it is the constant function at the worst vector, which is optimal
/// because the wrapper makes the codeword independent of the seed.
fn prepare_additive_like(
    spec: &ExperimentSpec,
    noise: NoiseSet,
    additive: bool,
) -> Result<Prepared, HarnessError> {
    let code = build_code(&spec.code)?;
    let model = if additive {
        ChannelModel::AdditiveHamming {
            noise: noise.clone(),
        }
    } else {
        ChannelModel::Oblivious {
            noise: noise.clone(),
        }
    };
    let decoder = code.decoder_for(&model)?;
    let messages = message_list(spec, code.k())?;
    let mut notes = Vec::new();
    let pick = match spec.noise_policy {
        NoisePolicy::WorstFixed
        | NoisePolicy::PerStrategy(StrategySpec::AdversarialBruteforce { .. }) => {
            let idx = select_worst_noise(
                &code,
                decoder.as_ref(),
                &noise,
                &messages,
                spec.probe_trials,
                spec.master_seed,
            );
            notes.push(format!("worst fixed noise: {}", noise.elements()[idx]));
            Some(idx)
        }
        NoisePolicy::Uniform | NoisePolicy::PerStrategy(StrategySpec::Random) => None,
        NoisePolicy::PerStrategy(StrategySpec::FixedIndex { index }) => {
            if index >= noise.len() {
                return Err(HarnessError::Config(format!(
                    "noise index {index} out of range ({})",
                    noise.len()
                )));
            }
            Some(index)
        }
    };
    let master = spec.master_seed;
    let d_bits = code.seed_bits();
    let (n, k, t, eps) = (code.n(), code.k(), code.t(), code.epsilon());
    let trial = Box::new(move |i: u64| -> bool {
        let m = &messages[(i % messages.len() as u64) as usize];
        let choice = match pick {
            Some(idx) => NoisePick::Index(idx),
            None => NoisePick::UniformRandom,
        };
        let mut noise_rng = seedmix::rng_from_parts(&[master, LANE_NOISE, i]);
        let mut rho_rng = seedmix::rng_from_parts(&[master, LANE_RHO, i]);
        let rho = BitVector::random(d_bits, &mut rho_rng);
        let Ok(x) = code.encode(m, &rho) else {
            return false;
        };
        let xt =
            oblivious_transmit(&x, &noise, &choice, &mut noise_rng).expect("noise width checked");
        decoder.decode(&xt, &rho).ok().as_ref() == Some(m)
    });
    Ok(Prepared {
        n,
        k,
        t,
        d_bits,
        code_epsilon: eps,
        notes,
        trial,
    })
}

fn prepare_hamming(
    spec: &ExperimentSpec,
    graph: crate::channels::ChannelGraph,
) -> Result<Prepared, HarnessError> {
    let code = build_code(&spec.code)?;
    let decoder: Arc<dyn Decoder> = Arc::from(code.decoder_for(&ChannelModel::Hamming {
        graph: graph.clone(),
    })?);
    let messages = message_list(spec, code.k())?;
    let mut notes = Vec::new();
    // One channel function per message, fixed before any trial seed.
    let functions: Vec<ChannelFunction> = messages
        .iter()
        .enumerate()
        .map(|(gi, m)| {
            let strategy = match spec.noise_policy {
                NoisePolicy::WorstFixed => {
                    ChannelStrategy::Oracle(Arc::new(BruteforceNeighborOracle::new(
                        code.clone(),
                        decoder.clone(),
                        m.clone(),
                        spec.probe_trials.min(u32::MAX as u64) as u32,
                        spec.master_seed ^ gi as u64,
                    )))
                }
                NoisePolicy::PerStrategy(StrategySpec::AdversarialBruteforce { probes }) => {
                    ChannelStrategy::Oracle(Arc::new(BruteforceNeighborOracle::new(
                        code.clone(),
                        decoder.clone(),
                        m.clone(),
                        probes,
                        spec.master_seed ^ gi as u64,
                    )))
                }
                NoisePolicy::Uniform | NoisePolicy::PerStrategy(StrategySpec::Random) => {
                    ChannelStrategy::Seeded(spec.master_seed ^ gi as u64)
                }
                NoisePolicy::PerStrategy(StrategySpec::FixedIndex { index }) => {
                    ChannelStrategy::FixedIndex(index)
                }
            };
            ChannelFunction::new(graph.clone(), strategy)
        })
        .collect();
    match spec.noise_policy {
        NoisePolicy::WorstFixed
        | NoisePolicy::PerStrategy(StrategySpec::AdversarialBruteforce { .. }) => {
            notes.push("channel function: bruteforce over neighbors, probe-seeded".into());
        }
        _ => {}
    }
    let master = spec.master_seed;
    let d_bits = code.seed_bits();
    let (n, k, t, eps) = (code.n(), code.k(), code.t(), code.epsilon());
    let trial = Box::new(move |i: u64| -> bool {
        let gi = (i % messages.len() as u64) as usize;
        let m = &messages[gi];
        let ch = &functions[gi];
        let mut rho_rng = seedmix::rng_from_parts(&[master, LANE_RHO, i]);
        let rho = BitVector::random(d_bits, &mut rho_rng);
        let Ok(x) = code.encode(m, &rho) else {
            return false;
        };
        let yt = ch.apply(&x);
        decoder.decode(&yt, &rho).ok().as_ref() == Some(m)
    });
    Ok(Prepared {
        n,
        k,
        t,
        d_bits,
        code_epsilon: eps,
        notes,
        trial,
    })
}

fn prepare_memoryless(
    spec: &ExperimentSpec,
    noise: NoiseSet,
    blocks: usize,
) -> Result<Prepared, HarnessError> {
    let code = build_code(&spec.code)?;
    let decoder = code.decoder_for(&ChannelModel::MemorylessBlocks {
        noise: noise.clone(),
        blocks,
    })?;
    if code.n() % blocks != 0 {
        return Err(HarnessError::Config(format!(
            "codeword length {} not divisible into {blocks} blocks",
            code.n()
        )));
    }
    let inner_n = code.n() / blocks;
    let messages = message_list(spec, code.k())?;
    let block_spec = BlockChannelSpec::MemorylessRandom { noise, blocks };
    let master = spec.master_seed;
    let d_bits = code.seed_bits();
    let (n, k, t, eps) = (code.n(), code.k(), code.t(), code.epsilon());
    let trial = Box::new(move |i: u64| -> bool {
        let m = &messages[(i % messages.len() as u64) as usize];
        let mut rho_rng = seedmix::rng_from_parts(&[master, LANE_RHO, i]);
        let rho = BitVector::random(d_bits, &mut rho_rng);
        let Ok(x) = code.encode(m, &rho) else {
            return false;
        };
        let xs: Vec<BitVector> = (0..blocks).map(|b| x.slice(b * inner_n, inner_n)).collect();
        let mut noise_rng = seedmix::rng_from_parts(&[master, LANE_NOISE, i]);
        let ys = block_transmit(&xs, &block_spec, &mut noise_rng).expect("block count");
        let mut yt = BitVector::zeros(0);
        for y in &ys {
            yt = yt.concat(y);
        }
        decoder.decode(&yt, &rho).ok().as_ref() == Some(m)
    });
    Ok(Prepared {
        n,
        k,
        t,
        d_bits,
        code_epsilon: eps,
        notes: Vec::new(),
        trial,
    })
}

fn prepare_piecewise(
    spec: &ExperimentSpec,
    graphs: Vec<crate::channels::ChannelGraph>,
) -> Result<Prepared, HarnessError> {
    let CodeDescriptor::ConcatPiecewise {
        inner_n,
        inner_t,
        inner_epsilon,
        message_symbols,
        blocks,
    } = spec.code
    else {
        return Err(HarnessError::Config(
            "piecewise block channels pair with the concat-piecewise code".into(),
        ));
    };
    let code = Arc::new(ConcatPiecewise::new(
        InnerParams {
            n: inner_n,
            t: inner_t,
            epsilon: inner_epsilon,
        },
        OuterParams {
            message_symbols,
            blocks,
        },
    )?);
    if graphs.len() != blocks {
        return Err(HarnessError::Config(format!(
            "channel has {} blocks, code has {blocks}",
            graphs.len()
        )));
    }
    let decoder = code.decoder_for(&ChannelModel::PiecewiseBlocks {
        graphs: graphs.clone(),
    })?;
    let inner: Arc<dyn Code> = Arc::new(code.inner().clone());
    let block_decoders: Vec<Arc<dyn Decoder>> = graphs
        .iter()
        .map(|g| {
            code.inner()
                .decoder_for(&ChannelModel::Hamming { graph: g.clone() })
                .map(Arc::from)
        })
        .collect::<Result<_, _>>()?;
    let messages = message_list(spec, code.k())?;
    // Per message, per block: a channel function fixed before the trials.
    let mut per_message_functions: Vec<Vec<ChannelFunction>> = Vec::with_capacity(messages.len());
    for (gi, m) in messages.iter().enumerate() {
        let symbols = code.outer_symbols(m)?;
        let functions = graphs
            .iter()
            .enumerate()
            .map(|(b, g)| {
                let strategy = match spec.noise_policy {
                    NoisePolicy::WorstFixed => {
                        ChannelStrategy::Oracle(Arc::new(BruteforceNeighborOracle::new(
                            inner.clone(),
                            block_decoders[b].clone(),
                            BitVector::from_u64(symbols[b], code.inner().k()),
                            spec.probe_trials.min(64) as u32,
                            spec.master_seed ^ ((gi as u64) << 20) ^ b as u64,
                        )))
                    }
                    NoisePolicy::PerStrategy(StrategySpec::AdversarialBruteforce { probes }) => {
                        ChannelStrategy::Oracle(Arc::new(BruteforceNeighborOracle::new(
                            inner.clone(),
                            block_decoders[b].clone(),
                            BitVector::from_u64(symbols[b], code.inner().k()),
                            probes,
                            spec.master_seed ^ ((gi as u64) << 20) ^ b as u64,
                        )))
                    }
                    NoisePolicy::Uniform | NoisePolicy::PerStrategy(StrategySpec::Random) => {
                        ChannelStrategy::Seeded(spec.master_seed ^ ((gi as u64) << 20) ^ b as u64)
                    }
                    NoisePolicy::PerStrategy(StrategySpec::FixedIndex { index }) => {
                        ChannelStrategy::FixedIndex(index)
                    }
                };
                ChannelFunction::new(g.clone(), strategy)
            })
            .collect();
        per_message_functions.push(functions);
    }
    let master = spec.master_seed;
    let d_bits = code.seed_bits();
    let (n, k, t, eps) = (code.n(), code.k(), code.t(), code.epsilon());
    let code_for_trial = code.clone();
    let trial = Box::new(move |i: u64| -> bool {
        let gi = (i % messages.len() as u64) as usize;
        let m = &messages[gi];
        let functions = &per_message_functions[gi];
        let mut rho_rng = seedmix::rng_from_parts(&[master, LANE_RHO, i]);
        let rho = BitVector::random(d_bits, &mut rho_rng);
        let Ok(x) = code_for_trial.encode(m, &rho) else {
            return false;
        };
        let mut yt = BitVector::zeros(0);
        for (b, ch) in functions.iter().enumerate() {
            yt = yt.concat(&ch.apply(&x.slice(b * inner_n, inner_n)));
        }
        decoder.decode(&yt, &rho).ok().as_ref() == Some(m)
    });
    Ok(Prepared {
        n,
        k,
        t,
        d_bits,
        code_epsilon: eps,
        notes: Vec::new(),
        trial,
    })
}

/// Sphere-packing bound report for a constructed code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub t: u32,
    pub epsilon: f64,
    pub rate: f64,
    pub bound_rate: f64,
    pub margin: f64,
    pub ok: bool,
}

/// Computes the rate bound and margin for a code; a negative margin flags a
/// violation.
pub fn check_rate_bound(code: &dyn Code) -> BoundReport {
    let rate = code.rate();
    let bound_rate = sphere_packing_rate_bound(code.n(), code.t(), code.epsilon());
    BoundReport {
        n: code.n(),
        k: code.k(),
        t: code.t(),
        epsilon: code.epsilon(),
        rate,
        bound_rate,
        margin: bound_rate - rate,
        ok: bound_rate - rate >= 0.0,
    }
}
