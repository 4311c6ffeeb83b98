//! JSON descriptors for codes, channels, and experiments.
//!
//! A code descriptor names a scheme and its parameters, e.g.
//! `{"scheme":"syndrome","n":48,"t":10,"epsilon":0.015625,
//!   "fingerprinter":{"type":"random-linear"}}`. A channel descriptor names
//! the scenario and the underlying noise or graph family. The experiment
//! spec bundles both with the sampling policies, trial count, master seed,
//! and acceptance target.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::channels::{graph_family, noise_set_family, ChannelModel, GraphSpec, NoiseSpec};
use crate::codes::{
    additive_hamming_wrap, Code, ConcatMemoryless, ConcatPiecewise, HammingHashCode, InnerParams,
    OuterParams, RandomToyCode, SyndromeCode, ToyParams,
};
use crate::fingerprint::{
    GuvFingerprinter, GuvParams, LinearFingerprinter, RandomLinearFingerprinter,
};
use crate::harness::HarnessError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum FingerprinterDescriptor {
    RandomLinear {
        #[serde(default)]
        label: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed_bits: Option<usize>,
    },
    Guv {
        params: GuvParams,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "scheme", rename_all = "kebab-case")]
pub enum CodeDescriptor {
    Syndrome {
        n: usize,
        t: u32,
        epsilon: f64,
        fingerprinter: FingerprinterDescriptor,
    },
    Hash {
        n: usize,
        t: u32,
        epsilon: f64,
    },
    Additive {
        inner: Box<CodeDescriptor>,
    },
    ConcatMemoryless {
        inner_n: usize,
        inner_t: u32,
        inner_epsilon: f64,
        message_symbols: usize,
        blocks: usize,
    },
    ConcatPiecewise {
        inner_n: usize,
        inner_t: u32,
        inner_epsilon: f64,
        message_symbols: usize,
        blocks: usize,
    },
    RandomToy {
        n: usize,
        k: usize,
        t: u32,
        epsilon: f64,
        r_seeds: usize,
        seed: u64,
    },
}

pub fn build_fingerprinter(
    desc: &FingerprinterDescriptor,
    n: usize,
    t: u32,
    epsilon: f64,
) -> Result<Arc<dyn LinearFingerprinter>, HarnessError> {
    Ok(match desc {
        FingerprinterDescriptor::RandomLinear { label, seed_bits } => {
            let fp = RandomLinearFingerprinter::new(n, t, epsilon, *label)?;
            match seed_bits {
                Some(d) => Arc::new(fp.with_seed_bits(*d)),
                None => Arc::new(fp),
            }
        }
        FingerprinterDescriptor::Guv { params } => {
            Arc::new(GuvFingerprinter::new(n, t, epsilon, *params)?)
        }
    })
}

pub fn build_code(desc: &CodeDescriptor) -> Result<Arc<dyn Code>, HarnessError> {
    Ok(match desc {
        CodeDescriptor::Syndrome {
            n,
            t,
            epsilon,
            fingerprinter,
        } => {
            let fp = build_fingerprinter(fingerprinter, *n, *t, *epsilon)?;
            Arc::new(SyndromeCode::new(fp, *t, *epsilon)?)
        }
        CodeDescriptor::Hash { n, t, epsilon } => Arc::new(HammingHashCode::new(*n, *t, *epsilon)?),
        CodeDescriptor::Additive { inner } => Arc::new(additive_hamming_wrap(build_code(inner)?)),
        CodeDescriptor::ConcatMemoryless {
            inner_n,
            inner_t,
            inner_epsilon,
            message_symbols,
            blocks,
        } => Arc::new(ConcatMemoryless::new(
            InnerParams {
                n: *inner_n,
                t: *inner_t,
                epsilon: *inner_epsilon,
            },
            OuterParams {
                message_symbols: *message_symbols,
                blocks: *blocks,
            },
        )?),
        CodeDescriptor::ConcatPiecewise {
            inner_n,
            inner_t,
            inner_epsilon,
            message_symbols,
            blocks,
        } => Arc::new(ConcatPiecewise::new(
            InnerParams {
                n: *inner_n,
                t: *inner_t,
                epsilon: *inner_epsilon,
            },
            OuterParams {
                message_symbols: *message_symbols,
                blocks: *blocks,
            },
        )?),
        CodeDescriptor::RandomToy {
            n,
            k,
            t,
            epsilon,
            r_seeds,
            seed,
        } => Arc::new(RandomToyCode::new(ToyParams {
            n: *n,
            k: *k,
            t: *t,
            epsilon: *epsilon,
            r_seeds: *r_seeds,
            seed: *seed,
        })?),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum ChannelDescriptor {
    Oblivious {
        noise: NoiseSpec,
    },
    Hamming {
        graph: GraphSpec,
    },
    AdditiveHamming {
        noise: NoiseSpec,
    },
    MemorylessBlocks {
        noise: NoiseSpec,
        blocks: usize,
    },
    /// The same graph family in every block.
    PiecewiseBlocks {
        graph: GraphSpec,
        blocks: usize,
    },
}

pub fn build_channel(desc: &ChannelDescriptor) -> Result<ChannelModel, HarnessError> {
    Ok(match desc {
        ChannelDescriptor::Oblivious { noise } => ChannelModel::Oblivious {
            noise: noise_set_family(noise)?,
        },
        ChannelDescriptor::Hamming { graph } => ChannelModel::Hamming {
            graph: graph_family(graph)?,
        },
        ChannelDescriptor::AdditiveHamming { noise } => ChannelModel::AdditiveHamming {
            noise: noise_set_family(noise)?,
        },
        ChannelDescriptor::MemorylessBlocks { noise, blocks } => ChannelModel::MemorylessBlocks {
            noise: noise_set_family(noise)?,
            blocks: *blocks,
        },
        ChannelDescriptor::PiecewiseBlocks { graph, blocks } => ChannelModel::PiecewiseBlocks {
            graphs: (0..*blocks)
                .map(|_| graph_family(graph))
                .collect::<Result<_, _>>()?,
        },
    })
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MessagePolicy {
    /// Every message of the code, cycled across trials (small k only).
    All,
    /// A fixed list of `count` messages drawn before any trial runs.
    #[default]
    #[serde(rename = "random")]
    Random,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StrategySpec {
    FixedIndex { index: usize },
    Random,
    AdversarialBruteforce { probes: u32 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum NoisePolicy {
    /// The worst fixed noise vector (or channel function), selected with
    /// probe seeds before any trial randomness is drawn.
    #[default]
    WorstFixed,
    /// Uniform noise per trial (oblivious) or a fixed pseudorandom channel
    /// function (Hamming).
    Uniform,
    /// An explicit strategy.
    PerStrategy(StrategySpec),
}

fn default_master_seed() -> u64 {
    0xC0DEC0DE
}

fn default_slack() -> f64 {
    0.5
}

fn default_messages() -> u64 {
    16
}

fn default_probes() -> u64 {
    128
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentSpec {
    pub code: CodeDescriptor,
    pub channel: ChannelDescriptor,
    #[serde(default)]
    pub message_policy: MessagePolicy,
    /// Number of messages under the random policy.
    #[serde(default = "default_messages")]
    pub message_count: u64,
    #[serde(default)]
    pub noise_policy: NoisePolicy,
    pub trials: u64,
    #[serde(default = "default_master_seed")]
    pub master_seed: u64,
    pub epsilon_target: f64,
    /// PASS iff wilson_hi <= epsilon_target * (1 + slack_factor).
    #[serde(default = "default_slack")]
    pub slack_factor: f64,
    /// Probe seeds used by worst-fixed selection and bruteforce adversaries.
    #[serde(default = "default_probes")]
    pub probe_trials: u64,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be >= 1".into()));
        }
        if !(self.epsilon_target > 0.0 && self.epsilon_target < 1.0) {
            return Err(HarnessError::Config("epsilon_target outside (0,1)".into()));
        }
        if self.slack_factor < 0.0 {
            return Err(HarnessError::Config("slack_factor must be >= 0".into()));
        }
        Ok(())
    }
}
