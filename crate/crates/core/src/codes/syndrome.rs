//! Syndrome codes from linear invertible fingerprints.
//!
//! Encoding places messages in the null space of the seed's fingerprint
//! matrix H_ρ: message m maps to the m-th element under the canonical
//! null-space enumeration. The decoder for an oblivious channel E computes
//! the syndrome p = H_ρ·x̃, which equals H_ρ·e, recovers e as the unique
//! element of E with that fingerprint, and reads the message off x̃ ⊕ e.
//! The code is linear for fixed ρ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::bitlinalg::{
    mat_vec_mul, message_of_codeword, null_space, nullspace_codeword, BitMatrix, BitVector,
    NullSpaceBasis,
};
use crate::channels::{ChannelModel, NoiseSet};
use crate::codes::{check_rate_bound, expect_len, Code, CodeError, DecodeFailure, Decoder};
use crate::fingerprint::LinearFingerprinter;

/// Per-seed derived state, computed once per seed and shared.
struct SeedTables {
    h: BitMatrix,
    basis: NullSpaceBasis,
}

type SeedCache = Mutex<HashMap<BitVector, Arc<SeedTables>>>;

const SEED_CACHE_LIMIT: usize = 512;

#[derive(Clone)]
pub struct SyndromeCode {
    fp: Arc<dyn LinearFingerprinter>,
    t: u32,
    epsilon: f64,
    k: usize,
    cache: Arc<SeedCache>,
}

/// Builds the syndrome code over a linear fingerprinter.
pub fn syndrome_code(
    fp: Arc<dyn LinearFingerprinter>,
    t: u32,
    epsilon: f64,
) -> Result<SyndromeCode, CodeError> {
    SyndromeCode::new(fp, t, epsilon)
}

impl SyndromeCode {
    pub fn new(fp: Arc<dyn LinearFingerprinter>, t: u32, epsilon: f64) -> Result<Self, CodeError> {
        let n = fp.input_len();
        let out_len = fp.out_len();
        if out_len >= n {
            return Err(CodeError::BadParams(format!(
                "fingerprint length {out_len} leaves no message bits at n = {n}"
            )));
        }
        let k = n - out_len;
        if k > 64 {
            return Err(CodeError::BadParams(format!(
                "message length {k} above the 64-bit desk scale"
            )));
        }
        if out_len > 64 {
            return Err(CodeError::BadParams(
                "fingerprints above 64 bits are out of desk scale".into(),
            ));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(CodeError::BadParams(format!(
                "epsilon {epsilon} outside (0,1)"
            )));
        }
        check_rate_bound(n, k, t, epsilon)?;
        Ok(Self {
            fp,
            t,
            epsilon,
            k,
            cache: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    pub fn fingerprinter(&self) -> &Arc<dyn LinearFingerprinter> {
        &self.fp
    }

    fn tables(&self, rho: &BitVector) -> Arc<SeedTables> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(t) = cache.get(rho) {
            return t.clone();
        }
        let h = self.fp.matrix_of(rho);
        let basis = null_space(&h);
        let tables = Arc::new(SeedTables { h, basis });
        if cache.len() >= SEED_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(rho.clone(), tables.clone());
        tables
    }
}

impl Code for SyndromeCode {
    fn n(&self) -> usize {
        self.fp.input_len()
    }

    fn k(&self) -> usize {
        self.k
    }

    fn t(&self) -> u32 {
        self.t
    }

    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn seed_bits(&self) -> usize {
        self.fp.seed_bits()
    }

    fn encode(&self, m: &BitVector, rho: &BitVector) -> Result<BitVector, CodeError> {
        expect_len(m, self.k, "message")?;
        expect_len(rho, self.seed_bits(), "seed")?;
        let tables = self.tables(rho);
        nullspace_codeword(&tables.basis, m.to_u64())
            .map_err(|e| CodeError::BadParams(e.to_string()))
    }

    fn decoder_for(&self, channel: &ChannelModel) -> Result<Box<dyn Decoder>, CodeError> {
        let noise = match channel {
            ChannelModel::Oblivious { noise } => noise.clone(),
            other => {
                return Err(CodeError::UnsupportedChannel(format!(
                    "syndrome code decodes oblivious channels, got {other:?}"
                )))
            }
        };
        if noise.n() != self.n() {
            return Err(CodeError::LengthMismatch(format!(
                "noise set over {} bits, code over {}",
                noise.n(),
                self.n()
            )));
        }
        Ok(Box::new(SyndromeDecoder {
            code: self.clone(),
            noise,
            tables: Mutex::new(HashMap::new()),
        }))
    }
}

/// Fingerprint lookup table of the noise set for one seed: packed fingerprint
/// value to unique element index, with collisions marked.
enum Bucket {
    Unique(u32),
    Multi,
}

struct FpTable {
    buckets: HashMap<u64, Bucket>,
}

impl FpTable {
    fn build(h: &BitMatrix, noise: &NoiseSet) -> Self {
        let mut buckets: HashMap<u64, Bucket> = HashMap::with_capacity(noise.len());
        for (i, e) in noise.elements().iter().enumerate() {
            let p = mat_vec_mul(h, e).expect("noise length checked").to_u64();
            buckets
                .entry(p)
                .and_modify(|b| *b = Bucket::Multi)
                .or_insert(Bucket::Unique(i as u32));
        }
        Self { buckets }
    }
}

pub struct SyndromeDecoder {
    code: SyndromeCode,
    noise: NoiseSet,
    tables: Mutex<HashMap<BitVector, Arc<FpTable>>>,
}

impl SyndromeDecoder {
    fn table(&self, rho: &BitVector, h: &BitMatrix) -> Arc<FpTable> {
        let mut cache = self.tables.lock().unwrap();
        if let Some(t) = cache.get(rho) {
            return t.clone();
        }
        let table = Arc::new(FpTable::build(h, &self.noise));
        if cache.len() >= SEED_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(rho.clone(), table.clone());
        table
    }
}

impl Decoder for SyndromeDecoder {
    fn decode(&self, xt: &BitVector, rho: &BitVector) -> Result<BitVector, DecodeFailure> {
        let seed = self.code.tables(rho);
        let p = mat_vec_mul(&seed.h, xt).expect("codeword length").to_u64();
        let table = self.table(rho, &seed.h);
        let e = match table.buckets.get(&p) {
            None => return Err(DecodeFailure::NotFound),
            Some(Bucket::Multi) => return Err(DecodeFailure::Ambiguous),
            Some(Bucket::Unique(i)) => &self.noise.elements()[*i as usize],
        };
        let x = xt.xor(e);
        let m = message_of_codeword(&seed.basis, &x).map_err(|_| DecodeFailure::NotFound)?;
        if self.code.k < 64 && m >> self.code.k != 0 {
            return Err(DecodeFailure::MessageRange);
        }
        Ok(BitVector::from_u64(m, self.code.k))
    }

    fn noise_failure_profile(&self, rho: &BitVector) -> Option<Vec<bool>> {
        let seed = self.code.tables(rho);
        let table = self.table(rho, &seed.h);
        // An element fails exactly when some other element shares its
        // fingerprint under this seed.
        let profile = self
            .noise
            .elements()
            .iter()
            .map(|e| {
                let p = mat_vec_mul(&seed.h, e).expect("noise length").to_u64();
                matches!(table.buckets.get(&p), Some(Bucket::Multi))
            })
            .collect();
        Some(profile)
    }
}
