//! Experiment harness: descriptors, the Monte Carlo runner, bound checkers,
//! attack drivers, parameter sweeps, and verdict statistics.

pub mod adversary;
pub mod attacks;
pub mod descriptors;
pub mod experiment;
pub mod stats;
pub mod sweep;

pub use attacks::{
    run_hamming_attack, run_oblivious_attack, HammingAttackOutcome, HammingAttackSpec,
    ObliviousAttackOutcome, ObliviousAttackSpec,
};
pub use descriptors::{
    build_channel, build_code, ChannelDescriptor, CodeDescriptor, ExperimentSpec, MessagePolicy,
    NoisePolicy, StrategySpec,
};
pub use experiment::{check_rate_bound, run_experiment, BoundReport, TrialReport, Verdict};
pub use stats::{fraction, wilson99, wilson_interval, Z99};
pub use sweep::{sweep, CSV_HEADER};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
}

impl From<crate::codes::CodeError> for HarnessError {
    fn from(e: crate::codes::CodeError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<crate::channels::ChannelError> for HarnessError {
    fn from(e: crate::channels::ChannelError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<crate::fingerprint::FingerprintError> for HarnessError {
    fn from(e: crate::fingerprint::FingerprintError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<crate::codes::RsError> for HarnessError {
    fn from(e: crate::codes::RsError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<crate::bitlinalg::LinalgError> for HarnessError {
    fn from(e: crate::bitlinalg::LinalgError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Config(format!("bad JSON: {e}"))
    }
}
