//! Channel models and adversaries.
//!
//! An oblivious channel is an explicit set E of noise vectors; it adds some
//! e ∈ E to the codeword, where e may depend on the message but not on the
//! codeword or the shared randomness. A Hamming channel is a bipartite graph
//! oracle from codewords to distorted words with a bound T on the right
//! degree; a channel function maps each left node to one of its neighbors.
//! Block channels split the codeword into D blocks and distort each block
//! independently, either with uniformly random noise from E (memoryless) or
//! adversarially within a per-block graph (piecewise).
//!
//! The module also ships the shared-randomness lower bounds as executable
//! attacks: [`lb_attack_oblivious`] defeats any two-message code with few
//! seed values by spanning codeword differences, and [`lb_attack_hamming`]
//! constructs, for any encoder with T² seeds, a degree-2T graph under which
//! the two encodings share a neighbor with probability at least 1/3.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitlinalg::BitVector;
use crate::fingerprint::SuspectList;

/// Desk-scale guard on enumerated sets and graphs.
pub const MAX_ENUMERATION: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChannelError {
    #[error("set too large to enumerate ({0} > 2^26)")]
    TooLarge(u64),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

/// An explicit oblivious channel: the set E of noise vectors.
///
/// `t` is the noise level, ceil(log2 |E|).
#[derive(Debug, Clone)]
pub struct NoiseSet {
    n: usize,
    elements: SuspectList,
    t: u32,
}

impl NoiseSet {
    pub fn new(elements: Vec<BitVector>) -> Result<Self, ChannelError> {
        let list =
            SuspectList::new(elements).map_err(|e| ChannelError::BadParams(e.to_string()))?;
        let t = (list.len() as f64).log2().ceil() as u32;
        Ok(Self {
            n: list.n(),
            elements: list,
            t,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn elements(&self) -> &[BitVector] {
        self.elements.elements()
    }

    pub fn suspects(&self) -> &SuspectList {
        &self.elements
    }

    pub fn contains(&self, e: &BitVector) -> bool {
        self.elements.contains(e)
    }
}

/// Noise-set families, JSON-serializable as channel specs, e.g.
/// `{"kind":"hamming-ball","n":16,"w":2}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoiseSpec {
    /// All vectors of Hamming weight at most w.
    HammingBall { n: usize, w: usize },
    /// All vectors whose support fits one window of `len` consecutive positions.
    Burst { n: usize, len: usize },
    /// A seeded distinct sample; `include_zero` forces 0 into the set.
    RandomSubset {
        n: usize,
        size: usize,
        seed: u64,
        #[serde(default)]
        include_zero: bool,
    },
    /// All GF(2) combinations of the given vectors (hex wire format).
    Span { n: usize, vectors: Vec<String> },
}

/// Builds the noise set described by a family spec.
pub fn noise_set_family(spec: &NoiseSpec) -> Result<NoiseSet, ChannelError> {
    match spec {
        NoiseSpec::HammingBall { n, w } => {
            let size = ball_size(*n, *w);
            guard_size(size)?;
            let mut elements = Vec::with_capacity(size as usize);
            enumerate_ball(&BitVector::zeros(*n), *w, &mut |v| elements.push(v));
            NoiseSet::new(elements)
        }
        NoiseSpec::Burst { n, len } => {
            if *len == 0 || *len > *n {
                return Err(ChannelError::BadParams(format!(
                    "burst window {len} outside 1..={n}"
                )));
            }
            guard_size((*n as u64) << (len - 1))?;
            let mut seen = std::collections::HashSet::new();
            let mut elements = Vec::new();
            for start in 0..=(n - len) {
                for pattern in 0..1u64 << len {
                    let mut v = BitVector::zeros(*n);
                    for b in 0..*len {
                        if pattern >> b & 1 == 1 {
                            v.set(start + b, true);
                        }
                    }
                    if seen.insert(v.words().to_vec()) {
                        elements.push(v);
                    }
                }
            }
            NoiseSet::new(elements)
        }
        NoiseSpec::RandomSubset {
            n,
            size,
            seed,
            include_zero,
        } => {
            guard_size(*size as u64)?;
            if *size == 0 || (*n < 64 && *size as u64 > 1 << *n) {
                return Err(ChannelError::BadParams(format!(
                    "cannot sample {size} distinct vectors of {n} bits"
                )));
            }
            let mut rng = crate::seedmix::rng_from_parts(&[0x4e5e, *seed]);
            let mut seen = std::collections::HashSet::new();
            let mut elements = Vec::with_capacity(*size);
            if *include_zero {
                let zero = BitVector::zeros(*n);
                seen.insert(zero.words().to_vec());
                elements.push(zero);
            }
            while elements.len() < *size {
                let v = BitVector::random(*n, &mut rng);
                if seen.insert(v.words().to_vec()) {
                    elements.push(v);
                }
            }
            NoiseSet::new(elements)
        }
        NoiseSpec::Span { n, vectors } => {
            let parsed: Result<Vec<BitVector>, _> =
                vectors.iter().map(|s| s.parse::<BitVector>()).collect();
            let parsed = parsed.map_err(|e| ChannelError::BadParams(e.to_string()))?;
            if parsed.iter().any(|v| v.len() != *n) {
                return Err(ChannelError::LengthMismatch(
                    "span generator length differs from n".into(),
                ));
            }
            span_noise_set(*n, &parsed)
        }
    }
}

/// All GF(2) combinations of the generators (deduplicated if dependent).
pub fn span_noise_set(n: usize, generators: &[BitVector]) -> Result<NoiseSet, ChannelError> {
    if generators.len() >= 26 {
        return Err(ChannelError::TooLarge(1u64 << generators.len()));
    }
    let mut elements = vec![BitVector::zeros(n)];
    let mut seen = std::collections::HashSet::new();
    seen.insert(elements[0].words().to_vec());
    for g in generators {
        let current: Vec<BitVector> = elements.clone();
        for v in current {
            let w = v.xor(g);
            if seen.insert(w.words().to_vec()) {
                elements.push(w);
            }
        }
    }
    NoiseSet::new(elements)
}

fn guard_size(size: u64) -> Result<(), ChannelError> {
    if size > MAX_ENUMERATION {
        return Err(ChannelError::TooLarge(size));
    }
    Ok(())
}

fn ball_size(n: usize, w: usize) -> u64 {
    let mut total = 0u64;
    let mut binom = 1u64;
    for i in 0..=w.min(n) {
        if i > 0 {
            binom = binom.saturating_mul((n - i + 1) as u64) / i as u64;
        }
        total = total.saturating_add(binom);
    }
    total
}

/// Calls `emit` on every vector within Hamming distance `w` of `center`,
/// by ascending weight, flip positions lexicographic.
fn enumerate_ball(center: &BitVector, w: usize, emit: &mut impl FnMut(BitVector)) {
    emit(center.clone());
    let n = center.len();
    let mut combos: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for _weight in 1..=w.min(n) {
        for combo in &combos {
            let mut v = center.clone();
            for &i in combo {
                v.set(i, !v.get(i));
            }
            emit(v);
        }
        let mut next = Vec::new();
        for combo in &combos {
            let last = *combo.last().unwrap();
            for j in last + 1..n {
                let mut c = combo.clone();
                c.push(j);
                next.push(c);
            }
        }
        combos = next;
    }
}

/// How an oblivious channel picks its noise vector.
#[derive(Debug, Clone)]
pub enum NoisePick {
    /// The element at this index of E.
    Index(usize),
    /// Uniformly random from E.
    UniformRandom,
}

/// Adds a vector of E to x. The index variant is how a pre-selected
/// (worst-case) noise vector is applied: the selection happens before any
/// shared randomness is drawn, honoring the resilience quantifier order.
pub fn oblivious_transmit(
    x: &BitVector,
    e_set: &NoiseSet,
    pick: &NoisePick,
    rng: &mut dyn RngCore,
) -> Result<BitVector, ChannelError> {
    if x.len() != e_set.n() {
        return Err(ChannelError::LengthMismatch(format!(
            "codeword has {} bits, noise set is over {} bits",
            x.len(),
            e_set.n()
        )));
    }
    let e = match pick {
        NoisePick::Index(i) => e_set
            .elements()
            .get(*i)
            .ok_or_else(|| ChannelError::BadParams(format!("noise index {i} out of range")))?,
        NoisePick::UniformRandom => {
            let i = rng.gen_range(0..e_set.len());
            &e_set.elements()[i]
        }
    };
    Ok(x.xor(e))
}

/// A bipartite-graph channel oracle. Left nodes are codewords, right nodes
/// distorted words; the distortion bound T is the maximum right degree, and
/// every left node has at least one neighbor.
#[derive(Debug, Clone)]
pub enum ChannelGraph {
    /// x ~ y iff Hamming distance(x, y) <= w. w = 0 is the identity graph.
    Ball { n: usize, w: usize },
    /// An explicit small graph over integer node ids.
    Explicit(Arc<ExplicitGraph>),
}

impl ChannelGraph {
    pub fn hamming_ball(n: usize, w: usize) -> Result<Self, ChannelError> {
        if w > n {
            return Err(ChannelError::BadParams(format!(
                "radius {w} exceeds n = {n}"
            )));
        }
        guard_size(ball_size(n, w))?;
        Ok(ChannelGraph::Ball { n, w })
    }

    pub fn identity(n: usize) -> Self {
        ChannelGraph::Ball { n, w: 0 }
    }

    /// Left-node bit length.
    pub fn n(&self) -> usize {
        match self {
            ChannelGraph::Ball { n, .. } => *n,
            ChannelGraph::Explicit(g) => g.node_bits,
        }
    }

    /// Right-node bit length.
    pub fn n_tilde(&self) -> usize {
        self.n()
    }

    /// The right-degree bound T.
    pub fn degree_bound(&self) -> u64 {
        match self {
            ChannelGraph::Ball { n, w } => ball_size(*n, *w),
            ChannelGraph::Explicit(g) => g.right_degree_bound(),
        }
    }

    pub fn neighbors(&self, x: &BitVector) -> Vec<BitVector> {
        match self {
            ChannelGraph::Ball { n, w } => {
                assert_eq!(x.len(), *n, "left node length mismatch");
                let mut out = Vec::new();
                enumerate_ball(x, *w, &mut |v| out.push(v));
                out
            }
            ChannelGraph::Explicit(g) => g
                .neighbors(x.to_u64())
                .iter()
                .map(|&y| BitVector::from_u64(y, g.node_bits))
                .collect(),
        }
    }

    pub fn left_neighbors(&self, y: &BitVector) -> Vec<BitVector> {
        match self {
            // The Hamming metric is symmetric.
            ChannelGraph::Ball { n, w } => {
                assert_eq!(y.len(), *n, "right node length mismatch");
                let mut out = Vec::new();
                enumerate_ball(y, *w, &mut |v| out.push(v));
                out
            }
            ChannelGraph::Explicit(g) => g
                .left_neighbors(y.to_u64())
                .iter()
                .map(|&x| BitVector::from_u64(x, g.node_bits))
                .collect(),
        }
    }
}

/// A dense explicit bipartite graph over node ids 0..num_nodes, used by the
/// lower-bound attack. Both sides share the id space.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    pub num_nodes: u64,
    node_bits: usize,
    adjacency: Vec<Vec<u64>>,
    reverse: Vec<Vec<u64>>,
}

impl ExplicitGraph {
    pub fn new(num_nodes: u64, edges: &[(u64, u64)]) -> Result<Self, ChannelError> {
        guard_size(num_nodes)?;
        if num_nodes == 0 || !num_nodes.is_power_of_two() {
            return Err(ChannelError::BadParams(
                "explicit graphs need a power-of-two node count".into(),
            ));
        }
        let node_bits = num_nodes.trailing_zeros() as usize;
        let mut adjacency = vec![Vec::new(); num_nodes as usize];
        let mut reverse = vec![Vec::new(); num_nodes as usize];
        for &(x, y) in edges {
            if x >= num_nodes || y >= num_nodes {
                return Err(ChannelError::BadParams("edge endpoint out of range".into()));
            }
            if !adjacency[x as usize].contains(&y) {
                adjacency[x as usize].push(y);
                reverse[y as usize].push(x);
            }
        }
        for list in adjacency.iter_mut().chain(reverse.iter_mut()) {
            list.sort_unstable();
        }
        let graph = Self {
            num_nodes,
            node_bits,
            adjacency,
            reverse,
        };
        if graph.adjacency.iter().any(|l| l.is_empty()) {
            return Err(ChannelError::BadParams(
                "every left node needs degree at least 1".into(),
            ));
        }
        Ok(graph)
    }

    pub fn neighbors(&self, x: u64) -> &[u64] {
        &self.adjacency[x as usize]
    }

    pub fn left_neighbors(&self, y: u64) -> &[u64] {
        &self.reverse[y as usize]
    }

    pub fn right_degree_bound(&self) -> u64 {
        self.reverse
            .iter()
            .map(|l| l.len() as u64)
            .max()
            .unwrap_or(0)
    }

    pub fn left_degree_bound(&self) -> u64 {
        self.adjacency
            .iter()
            .map(|l| l.len() as u64)
            .max()
            .unwrap_or(0)
    }
}

/// Strategy by which a channel function picks among the neighbors of its
/// input. The oracle variant is consulted with the input and its neighbor
/// list and returns an index; implementations must be pure functions of the
/// input (the harness builds them before any trial randomness is drawn).
pub enum ChannelStrategy {
    /// Neighbor at this index (clamped to the neighbor count).
    FixedIndex(usize),
    /// A pseudorandom but fixed function of the input, keyed here.
    Seeded(u64),
    Oracle(Arc<dyn ChannelOracle>),
}

impl std::fmt::Debug for ChannelStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelStrategy::FixedIndex(i) => write!(f, "FixedIndex({i})"),
            ChannelStrategy::Seeded(k) => write!(f, "Seeded({k})"),
            ChannelStrategy::Oracle(_) => write!(f, "Oracle"),
        }
    }
}

/// A neighbor chooser consulted by [`ChannelFunction`].
pub trait ChannelOracle: Send + Sync {
    /// Index into `neighbors` of the chosen output. Must be deterministic in x.
    fn pick(&self, x: &BitVector, neighbors: &[BitVector]) -> usize;
}

/// A channel function of a Hamming channel: a fixed mapping from left nodes
/// to right nodes. The output is always a neighbor of the input.
pub struct ChannelFunction {
    graph: ChannelGraph,
    strategy: ChannelStrategy,
}

impl ChannelFunction {
    pub fn new(graph: ChannelGraph, strategy: ChannelStrategy) -> Self {
        Self { graph, strategy }
    }

    pub fn graph(&self) -> &ChannelGraph {
        &self.graph
    }

    pub fn apply(&self, x: &BitVector) -> BitVector {
        let neighbors = self.graph.neighbors(x);
        assert!(!neighbors.is_empty(), "left node with no neighbors");
        let idx = match &self.strategy {
            ChannelStrategy::FixedIndex(i) => (*i).min(neighbors.len() - 1),
            ChannelStrategy::Seeded(key) => {
                let mut parts = vec![0xc4a_u64, *key, x.len() as u64];
                parts.extend_from_slice(x.words());
                let mut rng = crate::seedmix::rng_from_parts(&parts);
                rng.gen_range(0..neighbors.len())
            }
            ChannelStrategy::Oracle(oracle) => {
                let i = oracle.pick(x, &neighbors);
                assert!(i < neighbors.len(), "oracle picked a non-neighbor");
                i
            }
        };
        neighbors[idx].clone()
    }
}

impl std::fmt::Debug for ChannelFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChannelFunction({:?})", self.strategy)
    }
}

/// Block-channel description: D blocks, distorted independently.
#[derive(Debug)]
pub enum BlockChannelSpec {
    /// Each block gets an independent uniformly random vector from E.
    MemorylessRandom { noise: NoiseSet, blocks: usize },
    /// Block i is distorted adversarially within graph i by function i.
    PiecewiseAdversarial { functions: Vec<ChannelFunction> },
}

impl BlockChannelSpec {
    pub fn blocks(&self) -> usize {
        match self {
            BlockChannelSpec::MemorylessRandom { blocks, .. } => *blocks,
            BlockChannelSpec::PiecewiseAdversarial { functions } => functions.len(),
        }
    }
}

/// Transmits a D-block codeword through a block channel.
pub fn block_transmit(
    xs: &[BitVector],
    spec: &BlockChannelSpec,
    rng: &mut dyn RngCore,
) -> Result<Vec<BitVector>, ChannelError> {
    if xs.len() != spec.blocks() {
        return Err(ChannelError::LengthMismatch(format!(
            "{} blocks supplied, channel has {}",
            xs.len(),
            spec.blocks()
        )));
    }
    match spec {
        BlockChannelSpec::MemorylessRandom { noise, .. } => xs
            .iter()
            .map(|x| oblivious_transmit(x, noise, &NoisePick::UniformRandom, rng))
            .collect(),
        BlockChannelSpec::PiecewiseAdversarial { functions } => Ok(xs
            .iter()
            .zip(functions)
            .map(|(x, ch)| ch.apply(x))
            .collect()),
    }
}

/// Graph families, JSON-serializable like noise families.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphSpec {
    HammingBall { n: usize, w: usize },
    Identity { n: usize },
}

pub fn graph_family(spec: &GraphSpec) -> Result<ChannelGraph, ChannelError> {
    match spec {
        GraphSpec::HammingBall { n, w } => ChannelGraph::hamming_ball(*n, *w),
        GraphSpec::Identity { n } => Ok(ChannelGraph::identity(*n)),
    }
}

/// A concrete channel a decoder is built against.
#[derive(Debug, Clone)]
pub enum ChannelModel {
    /// Noise from E chosen independently of the codeword.
    Oblivious { noise: NoiseSet },
    /// Fully adversarial within a graph.
    Hamming { graph: ChannelGraph },
    /// The channel sees the codeword but must add a vector of E.
    AdditiveHamming { noise: NoiseSet },
    /// D blocks, each with independent uniform noise from E.
    MemorylessBlocks { noise: NoiseSet, blocks: usize },
    /// D blocks, block i distorted adversarially within graph i.
    PiecewiseBlocks { graphs: Vec<ChannelGraph> },
}

/// The two messages of a lower-bound attack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoMsg {
    A,
    B,
}

/// A decoder handle used by the oblivious attack: (received, seed index) to
/// the decoded message, or None on failure.
pub type TwoMsgDecoder<'a> = Box<dyn Fn(&BitVector, usize) -> Option<TwoMsg> + 'a>;

/// A two-message private code under attack in the oblivious scenario: an
/// encoder over an explicit list of seed values, plus the decoder the code
/// ships for a given noise set.
pub trait ObliviousAttackTarget {
    fn n(&self) -> usize;
    /// Number D of seed values.
    fn num_seeds(&self) -> usize;
    fn encode(&self, msg: TwoMsg, seed_index: usize) -> BitVector;
    /// The decoder for channel E; None means decoding failure.
    fn prepare_decoder(&self, e_set: &NoiseSet) -> TwoMsgDecoder<'_>;
}

/// Report of the oblivious randomness lower-bound attack.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObliviousAttackReport {
    /// Generators of the span: Enc_i(a) ⊕ Enc_i(b) per seed, hex.
    pub span_generators: Vec<String>,
    pub noise_set_size: usize,
    /// The witness message and noise vector (hex).
    pub message: TwoMsg,
    pub noise_vector: String,
    pub failures: u32,
    pub seeds: u32,
    pub failure_rate: f64,
    /// True when the c-search enumerated all 2^D combinations.
    pub exhaustive: bool,
}

/// Builds the span channel E = span{Enc_i(a) ⊕ Enc_i(b)} and searches for a
/// message and noise vector on which the supplied decoder fails for at least
/// half the seeds. The search over span combinations is exhaustive for
/// D <= 20 and randomized (flagged) beyond.
pub fn lb_attack_oblivious(
    target: &dyn ObliviousAttackTarget,
    sample_seed: u64,
) -> Result<ObliviousAttackReport, ChannelError> {
    let d = target.num_seeds();
    if d == 0 {
        return Err(ChannelError::BadParams(
            "attack needs at least one seed".into(),
        ));
    }
    let generators: Vec<BitVector> = (0..d)
        .map(|i| {
            target
                .encode(TwoMsg::A, i)
                .xor(&target.encode(TwoMsg::B, i))
        })
        .collect();
    let e_set = span_noise_set(target.n(), &generators)?;
    let decoder = target.prepare_decoder(&e_set);

    let codewords: Vec<(BitVector, BitVector)> = (0..d)
        .map(|i| (target.encode(TwoMsg::A, i), target.encode(TwoMsg::B, i)))
        .collect();

    let exhaustive = d <= 20;
    let mut best: Option<(TwoMsg, BitVector, u32)> = None;
    let try_combo = |mask: u64, best: &mut Option<(TwoMsg, BitVector, u32)>| {
        let mut e = BitVector::zeros(target.n());
        for (i, g) in generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e.xor_assign(g);
            }
        }
        for msg in [TwoMsg::A, TwoMsg::B] {
            let mut failures = 0u32;
            for (i, pair) in codewords.iter().enumerate() {
                let x = if msg == TwoMsg::A { &pair.0 } else { &pair.1 };
                if decoder(&x.xor(&e), i) != Some(msg) {
                    failures += 1;
                }
            }
            if best.as_ref().is_none_or(|(_, _, f)| failures > *f) {
                *best = Some((msg, e.clone(), failures));
            }
        }
    };

    if exhaustive {
        for mask in 0..1u64 << d {
            try_combo(mask, &mut best);
        }
    } else {
        let mut rng = crate::seedmix::rng_from_parts(&[0xa77ac4, sample_seed]);
        for _ in 0..1u64 << 20 {
            try_combo(rng.gen::<u64>() & ((1u64 << d) - 1), &mut best);
        }
    }

    let (message, e, failures) = best.expect("at least one combination tried");
    Ok(ObliviousAttackReport {
        span_generators: generators.iter().map(|g| g.to_string()).collect(),
        noise_set_size: e_set.len(),
        message,
        noise_vector: e.to_string(),
        failures,
        seeds: d as u32,
        failure_rate: failures as f64 / d as f64,
        exhaustive,
    })
}

/// A two-message encoder over integer codeword ids, attacked by
/// [`lb_attack_hamming`]. Seeds are 0..num_seeds, codewords 0..num_codewords.
pub trait TwoMessageEncoder {
    fn num_codewords(&self) -> u64;
    fn num_seeds(&self) -> usize;
    fn encode(&self, msg: TwoMsg, seed_index: usize) -> u64;
}

/// Which branch of the count-matrix case split produced the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HammingAttackCase {
    HeavyColumns,
    HeavyRows,
    Balanced,
}

/// Report of the Hamming randomness lower-bound attack.
#[derive(Debug)]
pub struct HammingAttackReport {
    pub case: HammingAttackCase,
    pub graph: Arc<ExplicitGraph>,
    /// The channel function realizing the attack, as an explicit map.
    pub channel_map: HashMap<u64, u64>,
    pub common_neighbor_events: u32,
    pub seeds: u32,
    pub common_neighbor_rate: f64,
    pub max_left_degree: u64,
    pub max_right_degree: u64,
}

/// For an arbitrary two-message encoder with T² seeds over at least 2T
/// codewords, constructs a bipartite graph with all degrees at most 2T under
/// which the encodings of the two messages have a common neighbor for at
/// least a third of the seeds.
///
/// The construction follows the count matrix `M[x][y]` = #{seeds with
/// Enc(a) = x, Enc(b) = y}: heavy columns and heavy rows (weight >= T) are
/// handled with pointer nodes; the balanced case keeps the positive cells
/// plus the diagonal.
pub fn lb_attack_hamming(
    enc: &dyn TwoMessageEncoder,
    t_bound: u64,
) -> Result<HammingAttackReport, ChannelError> {
    let n_nodes = enc.num_codewords();
    let t = t_bound;
    if t < 2 || !t.is_power_of_two() {
        return Err(ChannelError::BadParams(
            "degree bound T must be a power of two >= 2".into(),
        ));
    }
    if enc.num_seeds() as u64 != t * t {
        return Err(ChannelError::BadParams(format!(
            "attack requires exactly T^2 = {} seeds, got {}",
            t * t,
            enc.num_seeds()
        )));
    }
    if n_nodes < 2 * t {
        return Err(ChannelError::BadParams(format!(
            "attack requires at least 2T = {} codewords, got {n_nodes}",
            2 * t
        )));
    }
    guard_size(n_nodes)?;

    let seeds = enc.num_seeds();
    let pairs: Vec<(u64, u64)> = (0..seeds)
        .map(|i| (enc.encode(TwoMsg::A, i), enc.encode(TwoMsg::B, i)))
        .collect();
    if pairs.iter().any(|&(x, y)| x >= n_nodes || y >= n_nodes) {
        return Err(ChannelError::BadParams(
            "encoder output out of range".into(),
        ));
    }

    let mut counts: HashMap<(u64, u64), u64> = HashMap::new();
    for &(x, y) in &pairs {
        *counts.entry((x, y)).or_insert(0) += 1;
    }
    let mut row_weight: HashMap<u64, u64> = HashMap::new();
    let mut col_weight: HashMap<u64, u64> = HashMap::new();
    for (&(x, y), &c) in &counts {
        *row_weight.entry(x).or_insert(0) += c;
        *col_weight.entry(y).or_insert(0) += c;
    }
    let heavy_rows: std::collections::HashSet<u64> = row_weight
        .iter()
        .filter(|&(_, &w)| w >= t)
        .map(|(&x, _)| x)
        .collect();
    let heavy_cols: std::collections::HashSet<u64> = col_weight
        .iter()
        .filter(|&(_, &w)| w >= t)
        .map(|(&y, _)| y)
        .collect();
    let heavy_col_mass: u64 = counts
        .iter()
        .filter(|(&(_, y), _)| heavy_cols.contains(&y))
        .map(|(_, &c)| c)
        .sum();
    let heavy_row_mass: u64 = counts
        .iter()
        .filter(|(&(x, _), _)| heavy_rows.contains(&x))
        .map(|(_, &c)| c)
        .sum();

    let third = t * t; // compare 3*mass >= T^2 without division
    let (case, transposed) = if 3 * heavy_col_mass >= third {
        (HammingAttackCase::HeavyColumns, true)
    } else if 3 * heavy_row_mass >= third {
        (HammingAttackCase::HeavyRows, false)
    } else {
        (HammingAttackCase::Balanced, false)
    };

    // In the transposed (heavy-columns) case the roles of the two messages
    // swap: work with M^T and flip each seed's pair.
    let view: Vec<(u64, u64)> = if transposed {
        pairs.iter().map(|&(x, y)| (y, x)).collect()
    } else {
        pairs.clone()
    };
    let mut vcounts: HashMap<(u64, u64), u64> = HashMap::new();
    for &(x, y) in &view {
        *vcounts.entry((x, y)).or_insert(0) += 1;
    }
    let mut vrow: HashMap<u64, u64> = HashMap::new();
    let mut vcol: HashMap<u64, u64> = HashMap::new();
    for (&(x, y), &c) in &vcounts {
        *vrow.entry(x).or_insert(0) += c;
        *vcol.entry(y).or_insert(0) += c;
    }
    let vheavy_rows: std::collections::HashSet<u64> = vrow
        .iter()
        .filter(|&(_, &w)| w >= t)
        .map(|(&x, _)| x)
        .collect();
    let vheavy_cols: std::collections::HashSet<u64> = vcol
        .iter()
        .filter(|&(_, &w)| w >= t)
        .map(|(&y, _)| y)
        .collect();

    let mut edges: Vec<(u64, u64)> = Vec::new();
    let mut channel_map: HashMap<u64, u64> = HashMap::new();
    let mut event_count = 0u32;

    match case {
        HammingAttackCase::Balanced => {
            // Zero out heavy rows and heavy columns; connect positive cells
            // plus the full diagonal.
            let survives = |x: u64, y: u64| !vheavy_rows.contains(&x) && !vheavy_cols.contains(&y);
            for (&(x, y), _) in vcounts.iter().filter(|(&(x, y), _)| survives(x, y)) {
                edges.push((x, y));
            }
            for v in 0..n_nodes {
                edges.push((v, v));
            }
            for &(x, y) in &view {
                if survives(x, y) {
                    event_count += 1;
                }
            }
            // Channel function: send each surviving row to its first partner.
            for (&(x, y), _) in vcounts.iter().filter(|(&(x, y), _)| survives(x, y)) {
                channel_map
                    .entry(x)
                    .and_modify(|cur| *cur = (*cur).min(y))
                    .or_insert(y);
            }
        }
        HammingAttackCase::HeavyRows | HammingAttackCase::HeavyColumns => {
            // Keep only heavy rows of the viewed matrix. Pointers are T ids
            // whose (modified) rows are all zero.
            let kept: Vec<(u64, u64)> = vcounts
                .keys()
                .filter(|&&(x, _)| vheavy_rows.contains(&x))
                .copied()
                .collect();
            let pointers: Vec<u64> = (0..n_nodes)
                .filter(|id| !vheavy_rows.contains(id))
                .take(t as usize)
                .collect();
            assert_eq!(pointers.len(), t as usize, "not enough pointer candidates");
            let pointer_set: std::collections::HashSet<u64> = pointers.iter().copied().collect();

            // Every heavy row connects to every pointer.
            for &x in &vheavy_rows {
                for &p in &pointers {
                    edges.push((x, p));
                }
            }
            // Every nonzero column of the modified matrix connects to one
            // assigned pointer, at most T columns per pointer.
            let mut nonzero_cols: Vec<u64> = kept.iter().map(|&(_, y)| y).collect();
            nonzero_cols.sort_unstable();
            nonzero_cols.dedup();
            let mut assignment: HashMap<u64, u64> = HashMap::new();
            for (i, &y) in nonzero_cols.iter().enumerate() {
                let p = pointers[i / t as usize];
                assignment.insert(y, p);
                edges.push((y, p));
            }
            channel_map = assignment.clone();

            // Left nodes still isolated get a harmless edge: themselves if
            // they are not a pointer, otherwise a shared non-pointer sink
            // (pointers already carry up to 2T right edges).
            let occupied: std::collections::HashSet<u64> = edges.iter().map(|&(x, _)| x).collect();
            let sink = (0..n_nodes)
                .find(|id| !pointer_set.contains(id))
                .expect("a non-pointer node exists");
            for v in 0..n_nodes {
                if !occupied.contains(&v) {
                    if pointer_set.contains(&v) {
                        edges.push((v, sink));
                    } else {
                        edges.push((v, v));
                    }
                }
            }

            for &(x, y) in &view {
                if vheavy_rows.contains(&x) && assignment.contains_key(&y) {
                    event_count += 1;
                }
            }
        }
    }

    let graph = Arc::new(ExplicitGraph::new(n_nodes, &edges)?);

    // Certify the common-neighbor rate on the final graph by enumeration.
    let mut certified = 0u32;
    for &(x, y) in &pairs {
        let nx = graph.neighbors(x);
        let ny = graph.neighbors(y);
        if nx.iter().any(|v| ny.binary_search(v).is_ok()) {
            certified += 1;
        }
    }
    debug_assert!(certified >= event_count);

    Ok(HammingAttackReport {
        case,
        max_left_degree: graph.left_degree_bound(),
        max_right_degree: graph.right_degree_bound(),
        channel_map,
        common_neighbor_events: certified,
        seeds: seeds as u32,
        common_neighbor_rate: certified as f64 / seeds as f64,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seedmix;
    use rand::SeedableRng;

    fn rng(seed: u64) -> rand_chacha::ChaCha12Rng {
        rand_chacha::ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn ball_noise_sets() {
        let z = noise_set_family(&NoiseSpec::HammingBall { n: 8, w: 0 }).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z.t(), 0);
        assert!(z.elements()[0].is_zero());

        let b1 = noise_set_family(&NoiseSpec::HammingBall { n: 8, w: 1 }).unwrap();
        assert_eq!(b1.len(), 9); // 1 + C(8,1)
        let b2 = noise_set_family(&NoiseSpec::HammingBall { n: 8, w: 2 }).unwrap();
        assert_eq!(b2.len(), 1 + 8 + 28);
    }

    #[test]
    fn burst_noise_set() {
        let b = noise_set_family(&NoiseSpec::Burst { n: 6, len: 2 }).unwrap();
        // Supports fitting a window of 2: 0, five doubles, six singles.
        assert_eq!(b.len(), 12);
        for e in b.elements() {
            let sup = e.support();
            if let (Some(&lo), Some(&hi)) = (sup.first(), sup.last()) {
                assert!(hi - lo < 2);
            }
        }
    }

    #[test]
    fn span_of_independent_vectors() {
        let gens: Vec<BitVector> = (0..4).map(|i| BitVector::from_support(10, &[i])).collect();
        let s = span_noise_set(10, &gens).unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(s.t(), 4);
        // Closed under XOR.
        for a in s.elements() {
            for b in s.elements() {
                assert!(s.contains(&a.xor(b)));
            }
        }
        // Dependent generators collapse.
        let dep = vec![gens[0].clone(), gens[0].clone()];
        assert_eq!(span_noise_set(10, &dep).unwrap().len(), 2);
    }

    #[test]
    fn random_subset_distinct_and_seeded() {
        let spec = NoiseSpec::RandomSubset {
            n: 16,
            size: 100,
            seed: 5,
            include_zero: true,
        };
        let a = noise_set_family(&spec).unwrap();
        let b = noise_set_family(&spec).unwrap();
        assert_eq!(a.len(), 100);
        assert!(a.elements()[0].is_zero());
        assert_eq!(a.elements()[7], b.elements()[7]);
    }

    #[test]
    fn oversized_sets_are_rejected() {
        assert!(matches!(
            noise_set_family(&NoiseSpec::HammingBall { n: 64, w: 32 }),
            Err(ChannelError::TooLarge(_))
        ));
    }

    #[test]
    fn transmit_basics() {
        let e_set = noise_set_family(&NoiseSpec::HammingBall { n: 8, w: 1 }).unwrap();
        let mut r = rng(1);
        let x = BitVector::random(8, &mut r);
        // Index 0 is the zero vector: x unchanged.
        let y = oblivious_transmit(&x, &e_set, &NoisePick::Index(0), &mut r).unwrap();
        assert_eq!(y, x);
        // Difference always lies in E.
        for _ in 0..50 {
            let y = oblivious_transmit(&x, &e_set, &NoisePick::UniformRandom, &mut r).unwrap();
            assert!(e_set.contains(&y.xor(&x)));
        }
        let bad = BitVector::zeros(9);
        assert!(oblivious_transmit(&bad, &e_set, &NoisePick::Index(0), &mut r).is_err());
    }

    #[test]
    fn ball_graph_oracle() {
        let g = ChannelGraph::hamming_ball(8, 1).unwrap();
        assert_eq!(g.degree_bound(), 9);
        let id = ChannelGraph::identity(8);
        assert_eq!(id.degree_bound(), 1);
        let mut r = rng(2);
        for _ in 0..20 {
            let x = BitVector::random(8, &mut r);
            let nb = g.neighbors(&x);
            assert_eq!(nb.len(), 9);
            // Metric symmetry: x in left_neighbors(y) iff y in neighbors(x).
            for y in &nb {
                assert!(g.left_neighbors(y).contains(&x));
            }
        }
        assert!(ChannelGraph::hamming_ball(4, 5).is_err());
    }

    #[test]
    fn channel_function_outputs_neighbors() {
        let g = ChannelGraph::hamming_ball(8, 1).unwrap();
        let mut r = rng(3);
        for strategy in [ChannelStrategy::FixedIndex(3), ChannelStrategy::Seeded(42)] {
            let ch = ChannelFunction::new(g.clone(), strategy);
            for _ in 0..20 {
                let x = BitVector::random(8, &mut r);
                let y = ch.apply(&x);
                assert!(y.xor(&x).weight() <= 1);
                // Fixed function: repeated application agrees.
                assert_eq!(ch.apply(&x), y);
            }
        }
    }

    #[test]
    fn block_transmit_modes() {
        let noise = noise_set_family(&NoiseSpec::HammingBall { n: 6, w: 1 }).unwrap();
        let mut r = rng(4);
        let xs: Vec<BitVector> = (0..4).map(|_| BitVector::random(6, &mut r)).collect();

        // E = {0} is the identity.
        let zero_noise = noise_set_family(&NoiseSpec::HammingBall { n: 6, w: 0 }).unwrap();
        let spec = BlockChannelSpec::MemorylessRandom {
            noise: zero_noise,
            blocks: 4,
        };
        assert_eq!(block_transmit(&xs, &spec, &mut r).unwrap(), xs);

        let spec = BlockChannelSpec::MemorylessRandom {
            noise: noise.clone(),
            blocks: 4,
        };
        let ys = block_transmit(&xs, &spec, &mut r).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert!(noise.contains(&y.xor(x)));
        }
        assert!(block_transmit(&xs[..2], &spec, &mut r).is_err());

        let g = ChannelGraph::identity(6);
        let fns = (0..4)
            .map(|_| ChannelFunction::new(g.clone(), ChannelStrategy::FixedIndex(0)))
            .collect();
        let spec = BlockChannelSpec::PiecewiseAdversarial { functions: fns };
        assert_eq!(block_transmit(&xs, &spec, &mut r).unwrap(), xs);
    }

    /// Per-block noise is uniform on E: chi-square over |E| = 16 cells.
    #[test]
    fn memoryless_noise_is_uniform() {
        let noise = noise_set_family(&NoiseSpec::RandomSubset {
            n: 12,
            size: 16,
            seed: 9,
            include_zero: false,
        })
        .unwrap();
        let index_of: std::collections::HashMap<Vec<u64>, usize> = noise
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.words().to_vec(), i))
            .collect();
        let blocks = 8;
        let trials = 1500; // blocks * trials = 12000 draws
        let mut counts = [0u64; 16];
        let mut r = seedmix::rng_from_parts(&[0x11, 0x22]);
        let xs: Vec<BitVector> = (0..blocks).map(|_| BitVector::random(12, &mut r)).collect();
        let spec = BlockChannelSpec::MemorylessRandom {
            noise: noise.clone(),
            blocks,
        };
        for _ in 0..trials {
            let ys = block_transmit(&xs, &spec, &mut r).unwrap();
            for (x, y) in xs.iter().zip(&ys) {
                counts[index_of[&y.xor(x).words().to_vec()]] += 1;
            }
        }
        let draws = (blocks * trials) as f64;
        let expected = draws / 16.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 99% critical value at 15 degrees of freedom.
        assert!(chi2 < 30.578, "chi-square {chi2}");
    }

    struct TableEncoder {
        n: usize,
        rows: Vec<(BitVector, BitVector)>,
    }

    impl ObliviousAttackTarget for TableEncoder {
        fn n(&self) -> usize {
            self.n
        }
        fn num_seeds(&self) -> usize {
            self.rows.len()
        }
        fn encode(&self, msg: TwoMsg, i: usize) -> BitVector {
            match msg {
                TwoMsg::A => self.rows[i].0.clone(),
                TwoMsg::B => self.rows[i].1.clone(),
            }
        }
        fn prepare_decoder(&self, e_set: &NoiseSet) -> TwoMsgDecoder<'_> {
            // Maximum-likelihood over the noise set, favoring A on ties.
            let e_set = e_set.clone();
            Box::new(move |xt, i| {
                let (a, b) = &self.rows[i];
                if e_set.contains(&xt.xor(a)) {
                    Some(TwoMsg::A)
                } else if e_set.contains(&xt.xor(b)) {
                    Some(TwoMsg::B)
                } else {
                    None
                }
            })
        }
    }

    #[test]
    fn oblivious_attack_single_seed() {
        // D = 1: e = Enc_1(a) xor Enc_1(b) swaps the two codewords.
        let mut r = rng(6);
        let enc = TableEncoder {
            n: 10,
            rows: vec![(BitVector::random(10, &mut r), BitVector::random(10, &mut r))],
        };
        let report = lb_attack_oblivious(&enc, 0).unwrap();
        assert!(report.exhaustive);
        assert!(report.failure_rate >= 0.5, "rate {}", report.failure_rate);
    }

    #[test]
    fn oblivious_attack_reaches_half_on_any_table() {
        let mut r = rng(7);
        for d in [2usize, 4, 8] {
            let rows = (0..d)
                .map(|_| (BitVector::random(12, &mut r), BitVector::random(12, &mut r)))
                .collect();
            let enc = TableEncoder { n: 12, rows };
            let report = lb_attack_oblivious(&enc, 0).unwrap();
            assert!(
                report.failure_rate >= 0.5,
                "D = {d}: rate {}",
                report.failure_rate
            );
            // The span is closed under XOR by construction.
            let gens: Vec<BitVector> = report
                .span_generators
                .iter()
                .map(|s| s.parse().unwrap())
                .collect();
            let e_set = span_noise_set(12, &gens).unwrap();
            assert!(e_set.contains(&report.noise_vector.parse().unwrap()));
        }
    }

    struct FnEncoder<F: Fn(TwoMsg, usize) -> u64> {
        n_nodes: u64,
        seeds: usize,
        f: F,
    }

    impl<F: Fn(TwoMsg, usize) -> u64> TwoMessageEncoder for FnEncoder<F> {
        fn num_codewords(&self) -> u64 {
            self.n_nodes
        }
        fn num_seeds(&self) -> usize {
            self.seeds
        }
        fn encode(&self, msg: TwoMsg, i: usize) -> u64 {
            (self.f)(msg, i)
        }
    }

    #[test]
    fn hamming_attack_constant_encoder() {
        // Count matrix concentrated on one cell: common neighbor always.
        let enc = FnEncoder {
            n_nodes: 16,
            seeds: 16,
            f: |_m, _i| 3,
        };
        let report = lb_attack_hamming(&enc, 4).unwrap();
        assert_eq!(report.common_neighbor_rate, 1.0);
        assert!(report.max_right_degree <= 8);
        assert!(report.max_left_degree <= 8);
    }

    #[test]
    fn hamming_attack_random_encoders() {
        for t in [4u64, 8] {
            for salt in 0..5u64 {
                let n_nodes = 4 * t;
                let seeds = (t * t) as usize;
                let enc = FnEncoder {
                    n_nodes,
                    seeds,
                    f: move |m, i| {
                        let tag = if m == TwoMsg::A { 0 } else { 1 };
                        let mut r = seedmix::rng_from_parts(&[salt, tag, i as u64]);
                        r.gen_range(0..n_nodes)
                    },
                };
                let report = lb_attack_hamming(&enc, t).unwrap();
                assert!(
                    report.common_neighbor_rate >= 1.0 / 3.0,
                    "T={t} salt={salt}: rate {}",
                    report.common_neighbor_rate
                );
                assert!(report.max_right_degree <= 2 * t, "right degree");
                assert!(report.max_left_degree <= 2 * t, "left degree");
                // Channel function outputs are graph neighbors.
                for (&x, &y) in &report.channel_map {
                    assert!(report.graph.neighbors(x).contains(&y));
                }
            }
        }
    }

    #[test]
    fn hamming_attack_preconditions() {
        let enc = FnEncoder {
            n_nodes: 4,
            seeds: 16,
            f: |_m, i| i as u64 % 4,
        };
        // N < 2T is rejected.
        assert!(lb_attack_hamming(&enc, 4).is_err());
        let enc = FnEncoder {
            n_nodes: 64,
            seeds: 10,
            f: |_m, i| i as u64,
        };
        // Seed count must be exactly T^2.
        assert!(lb_attack_hamming(&enc, 4).is_err());
    }
}
