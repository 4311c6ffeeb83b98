//! Seeded linear fingerprints and their inverters.
//!
//! A fingerprinter maps an n-bit input to a short fingerprint, F(x, ρ) =
//! H_ρ·x, linearly in x for every fixed seed ρ. Given a suspect list S
//! containing x, the inverter recovers x from F(x, ρ) whenever x is the only
//! suspect with that fingerprint, which happens with probability at least
//! 1 − ε over ρ at the rated noise level.
//!
//! Two families are provided: [`RandomLinearFingerprinter`] draws H_ρ
//! uniformly (seed length out_len·n), and [`GuvFingerprinter`] builds H_ρ
//! from a Reed–Solomon-based polynomial condenser over GF(2^s) augmented
//! with a truncated pairwise-independent hash.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitlinalg::{mat_vec_mul, BitMatrix, BitVector};
use crate::field::{find_irreducible, poly_eval, poly_mod_pow2k, FieldContext, FieldPoly};
use crate::seedmix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FingerprintError {
    #[error("no suspect matches the fingerprint")]
    NotFound,
    #[error("two or more suspects match the fingerprint")]
    Ambiguous,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// An ordered list of distinct candidate inputs, all of the same length.
#[derive(Debug, Clone)]
pub struct SuspectList {
    n: usize,
    elements: Vec<BitVector>,
}

impl SuspectList {
    pub fn new(elements: Vec<BitVector>) -> Result<Self, FingerprintError> {
        let Some(first) = elements.first() else {
            return Err(FingerprintError::BadParams("empty suspect list".into()));
        };
        let n = first.len();
        if elements.iter().any(|e| e.len() != n) {
            return Err(FingerprintError::LengthMismatch(
                "suspects of unequal length".into(),
            ));
        }
        let mut seen = std::collections::HashSet::with_capacity(elements.len());
        if !elements.iter().all(|e| seen.insert(e.words().to_vec())) {
            return Err(FingerprintError::BadParams("duplicate suspect".into()));
        }
        Ok(Self { n, elements })
    }

    /// x together with the `size - 1` nearest Hamming neighbors, enumerated by
    /// ascending weight and then by ascending flip positions.
    pub fn hamming_neighborhood(x: &BitVector, size: usize) -> Self {
        let n = x.len();
        let mut elements = Vec::with_capacity(size);
        elements.push(x.clone());
        let mut flips: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while elements.len() < size && !flips.is_empty() {
            for combo in &flips {
                if elements.len() == size {
                    break;
                }
                let mut v = x.clone();
                for &i in combo {
                    v.set(i, !v.get(i));
                }
                elements.push(v);
            }
            // Extend position combinations to the next weight, lexicographic.
            let mut next = Vec::new();
            for combo in &flips {
                let last = *combo.last().unwrap();
                for j in last + 1..n {
                    let mut c = combo.clone();
                    c.push(j);
                    next.push(c);
                }
            }
            flips = next;
        }
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BitVector] {
        &self.elements
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        self.elements.iter().any(|e| e == x)
    }
}

/// A seeded linear fingerprint family F(x, ρ) = H_ρ·x.
pub trait LinearFingerprinter: Send + Sync {
    /// Input length n in bits.
    fn input_len(&self) -> usize;
    /// Fingerprint length in bits.
    fn out_len(&self) -> usize;
    /// Seed length d in bits.
    fn seed_bits(&self) -> usize;
    /// The matrix of F(·, ρ). Deterministic in ρ.
    fn matrix_of(&self, rho: &BitVector) -> BitMatrix;

    fn apply(&self, x: &BitVector, rho: &BitVector) -> BitVector {
        mat_vec_mul(&self.matrix_of(rho), x).expect("fingerprint dimension mismatch")
    }

    fn sample_seed(&self, rng: &mut dyn rand::RngCore) -> BitVector {
        BitVector::random(self.seed_bits(), rng)
    }
}

/// Scans the suspect list in order and returns the unique element whose
/// fingerprint under ρ equals `p`.
///
/// Zero matches and two or more matches are distinct errors; both count as
/// decoding failures upstream.
pub fn invert(
    fp: &dyn LinearFingerprinter,
    suspects: &SuspectList,
    p: &BitVector,
    rho: &BitVector,
) -> Result<BitVector, FingerprintError> {
    if p.len() != fp.out_len() {
        return Err(FingerprintError::LengthMismatch(format!(
            "fingerprint has {} bits, expected {}",
            p.len(),
            fp.out_len()
        )));
    }
    let h = fp.matrix_of(rho);
    let mut found: Option<&BitVector> = None;
    for x in suspects.elements() {
        if &mat_vec_mul(&h, x).expect("suspect length mismatch") == p {
            if found.is_some() {
                return Err(FingerprintError::Ambiguous);
            }
            found = Some(x);
        }
    }
    found.cloned().ok_or(FingerprintError::NotFound)
}

/// Builds the fully random linear family at noise level t and error budget
/// epsilon; `label` tags the family's derived streams.
pub fn random_linear_fingerprinter(
    n: usize,
    t: u32,
    epsilon: f64,
    label: u64,
) -> Result<RandomLinearFingerprinter, FingerprintError> {
    RandomLinearFingerprinter::new(n, t, epsilon, label)
}

/// Builds the condenser fingerprint with pairwise-hash augmentation.
pub fn guv_fingerprinter(
    n: usize,
    t: u32,
    epsilon: f64,
    params: GuvParams,
) -> Result<GuvFingerprinter, FingerprintError> {
    GuvFingerprinter::new(n, t, epsilon, params)
}

/// The fully random linear family: H_ρ uniform over all out_len × n matrices.
///
/// The default seed length is out_len·n bits, in which case the seed bits are
/// reshaped directly into the matrix rows (row r takes bits [r·n, (r+1)·n)),
/// so a uniform seed gives an exactly uniform matrix. A shorter seed length
/// may be configured; such seeds are expanded through a ChaCha12 stream keyed
/// from the seed bits (see [`crate::seedmix`]).
#[derive(Debug, Clone)]
pub struct RandomLinearFingerprinter {
    n: usize,
    t: u32,
    log_inv_eps: u32,
    seed_bits: usize,
    label: u64,
}

impl RandomLinearFingerprinter {
    pub fn new(n: usize, t: u32, epsilon: f64, label: u64) -> Result<Self, FingerprintError> {
        let log_inv_eps = log2_inverse_ceil(epsilon)?;
        let out_len = t as usize + log_inv_eps as usize;
        if out_len >= n {
            return Err(FingerprintError::BadParams(format!(
                "t + ceil(log2(1/epsilon)) = {out_len} must be below n = {n}"
            )));
        }
        Ok(Self {
            n,
            t,
            log_inv_eps,
            seed_bits: out_len * n,
            label,
        })
    }

    /// Overrides the seed length (enables experiments with reduced shared
    /// randomness; seeds are then expanded pseudo-randomly).
    pub fn with_seed_bits(mut self, d: usize) -> Self {
        self.seed_bits = d;
        self
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn log_inv_eps(&self) -> u32 {
        self.log_inv_eps
    }
}

/// ceil(log2(1/epsilon)) for epsilon in (0, 1].
pub fn log2_inverse_ceil(epsilon: f64) -> Result<u32, FingerprintError> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(FingerprintError::BadParams(format!(
            "epsilon {epsilon} outside (0, 1]"
        )));
    }
    let mut k = 0u32;
    while (2.0f64).powi(-(k as i32)) > epsilon + 1e-12 {
        k += 1;
        if k > 63 {
            return Err(FingerprintError::BadParams(format!(
                "epsilon {epsilon} too small"
            )));
        }
    }
    Ok(k)
}

impl LinearFingerprinter for RandomLinearFingerprinter {
    fn input_len(&self) -> usize {
        self.n
    }

    fn out_len(&self) -> usize {
        self.t as usize + self.log_inv_eps as usize
    }

    fn seed_bits(&self) -> usize {
        self.seed_bits
    }

    fn matrix_of(&self, rho: &BitVector) -> BitMatrix {
        assert_eq!(rho.len(), self.seed_bits, "seed length mismatch");
        let out_len = self.out_len();
        let mut m = BitMatrix::zeros(out_len, self.n);
        if self.seed_bits == out_len * self.n {
            for r in 0..out_len {
                m.set_row(r, &rho.slice(r * self.n, self.n));
            }
        } else {
            let mut rng = seedmix::rng_from_bits(self.label, rho);
            for r in 0..out_len {
                m.set_row(r, &BitVector::random(self.n, &mut rng));
            }
        }
        m
    }
}

/// Parameters of the condenser-based fingerprint family.
///
/// `s` is the log of the field size, `h_log` the log of the Frobenius step h,
/// `m_blocks` the number of extra condenser output blocks beyond the plain
/// polynomial evaluation, and `hash_bits` the truncated pairwise-hash width.
/// The condenser part of the output is s·(m_blocks + 1) bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuvParams {
    pub s: u32,
    pub h_log: u32,
    pub m_blocks: u32,
    pub hash_bits: u32,
}

impl GuvParams {
    pub fn out_len(&self) -> usize {
        self.s as usize * (self.m_blocks as usize + 1) + self.hash_bits as usize
    }

    fn validate(&self, n: usize) -> Result<(), FingerprintError> {
        if self.s == 0 || self.s > 64 {
            return Err(FingerprintError::BadParams("s must be 1..=64".into()));
        }
        if self.h_log == 0 {
            return Err(FingerprintError::BadParams(
                "h = 2^h_log must be >= 2".into(),
            ));
        }
        if self.m_blocks == 0 {
            return Err(FingerprintError::BadParams("m_blocks must be >= 1".into()));
        }
        if self.out_len() > n {
            return Err(FingerprintError::BadParams(format!(
                "out_len {} exceeds n = {n}",
                self.out_len()
            )));
        }
        Ok(())
    }
}

/// The polynomial condenser: x is parsed as a polynomial f_x of degree
/// n_pad/s − 1 over GF(2^s) (n zero-padded at the high end to a multiple of
/// s), and the output blocks are (f_x^(h^i) mod E)(y) for i = 0..=m_blocks,
/// where E is the canonical irreducible polynomial of degree n_pad/s.
///
/// Because h is a power of two, every block is GF(2)-linear in x, so the whole
/// map is a matrix A_y.
#[derive(Debug, Clone)]
pub struct GuvCondenser {
    params: GuvParams,
    n: usize,
    n_pad: usize,
    ctx: FieldContext,
    e_poly: FieldPoly,
}

impl GuvCondenser {
    pub fn new(params: GuvParams, n: usize) -> Result<Self, FingerprintError> {
        params.validate(n)?;
        let s = params.s as usize;
        let n_pad = n.div_ceil(s) * s;
        let ctx =
            FieldContext::new(params.s).map_err(|e| FingerprintError::BadParams(e.to_string()))?;
        let e_poly = find_irreducible(n_pad / s, ctx);
        Ok(Self {
            params,
            n,
            n_pad,
            ctx,
            e_poly,
        })
    }

    pub fn params(&self) -> GuvParams {
        self.params
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.params.s as usize * (self.params.m_blocks as usize + 1)
    }

    fn parse_poly(&self, x: &BitVector) -> FieldPoly {
        let s = self.params.s as usize;
        let mut coeffs = vec![0u64; self.n_pad / s];
        for i in x.support() {
            coeffs[i / s] |= 1 << (i % s);
        }
        FieldPoly::new(self.ctx, coeffs)
    }

    /// Direct evaluation of the condenser output blocks at the point y.
    pub fn condense(&self, x: &BitVector, y: u64) -> BitVector {
        assert_eq!(x.len(), self.n, "input length mismatch");
        assert!(self.ctx.contains(y), "y outside GF(2^s)");
        let s = self.params.s as usize;
        let y = self.ctx.element(y);
        let mut out = BitVector::zeros(self.rows());
        let mut g = self.parse_poly(x).rem(&self.e_poly);
        for block in 0..=self.params.m_blocks as usize {
            if block > 0 {
                g = poly_mod_pow2k(&g, self.params.h_log, &self.e_poly);
            }
            let v = poly_eval(&g, y).expect("context match").value();
            for l in 0..s {
                if v >> l & 1 == 1 {
                    out.set(block * s + l, true);
                }
            }
        }
        out
    }

    /// The matrix A_y with A_y·x equal to [`Self::condense`], built column by
    /// column on the n unit vectors (valid by linearity).
    pub fn matrix(&self, y: u64) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows(), self.n);
        for j in 0..self.n {
            let unit = BitVector::from_support(self.n, &[j]);
            let col = self.condense(&unit, y);
            for r in col.support() {
                m.set(r, j, true);
            }
        }
        m
    }
}

/// Convenience wrapper that builds the condenser for one call.
pub fn guv_condenser_matrix(
    params: GuvParams,
    n: usize,
    y: u64,
) -> Result<BitMatrix, FingerprintError> {
    Ok(GuvCondenser::new(params, n)?.matrix(y))
}

/// Condenser fingerprint with pairwise-hash augmentation.
///
/// The seed is ρ = (y, a, b): y ∈ GF(2^s) selects the condenser matrix A_y,
/// and (a, b) ∈ GF(2^n_pad)² is a pairwise-hash pair of which the linear part
/// x ↦ a·x contributes its first `hash_bits` output bits (b does not enter
/// the matrix but is carried in the seed so d matches the hash pair). Total
/// seed length d = s + 2·n_pad.
#[derive(Debug, Clone)]
pub struct GuvFingerprinter {
    t: u32,
    epsilon: f64,
    condenser: GuvCondenser,
    hash_ctx: FieldContext,
}

impl GuvFingerprinter {
    pub fn new(
        n: usize,
        t: u32,
        epsilon: f64,
        params: GuvParams,
    ) -> Result<Self, FingerprintError> {
        let condenser = GuvCondenser::new(params, n)?;
        if condenser.n_pad > 64 {
            return Err(FingerprintError::BadParams(
                "padded input length above 64 bits is out of desk scale".into(),
            ));
        }
        let hash_ctx = FieldContext::new(condenser.n_pad as u32)
            .map_err(|e| FingerprintError::BadParams(e.to_string()))?;
        Ok(Self {
            t,
            epsilon,
            condenser,
            hash_ctx,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn params(&self) -> GuvParams {
        self.condenser.params()
    }

    fn split_seed(&self, rho: &BitVector) -> (u64, u64, u64) {
        let s = self.condenser.params.s as usize;
        let n_pad = self.condenser.n_pad;
        let y = rho.slice(0, s).to_u64();
        let a = rho.slice(s, n_pad).to_u64();
        let b = rho.slice(s + n_pad, n_pad).to_u64();
        (y, a, b)
    }
}

impl LinearFingerprinter for GuvFingerprinter {
    fn input_len(&self) -> usize {
        self.condenser.n
    }

    fn out_len(&self) -> usize {
        self.condenser.params.out_len()
    }

    fn seed_bits(&self) -> usize {
        self.condenser.params.s as usize + 2 * self.condenser.n_pad
    }

    fn matrix_of(&self, rho: &BitVector) -> BitMatrix {
        assert_eq!(rho.len(), self.seed_bits(), "seed length mismatch");
        let (y, a, _b) = self.split_seed(rho);
        let cond = self.condenser.matrix(y);
        let hash_bits = self.condenser.params.hash_bits as usize;
        if hash_bits == 0 {
            return cond;
        }
        let mut hash = BitMatrix::zeros(hash_bits, self.condenser.n);
        for j in 0..self.condenser.n {
            let prod = self.hash_ctx.mul(a, 1u64 << j);
            for r in 0..hash_bits {
                if prod >> r & 1 == 1 {
                    hash.set(r, j, true);
                }
            }
        }
        cond.stack(&hash)
    }
}
