//! Reed–Solomon outer code over GF(2^k) with evaluation-point encoding.
//!
//! Messages are S field symbols taken as polynomial coefficients; the
//! codeword is the evaluation at the first D field elements (0, 1, 2, ...),
//! so D may use the whole field. Decoding uses Gao's algorithm (interpolate,
//! partial extended Euclid, divide), which handles arbitrary distinct
//! evaluation points and corrects up to floor((D − S)/2) symbol errors.
//! One more adversarial corruption can decode to a different codeword.

use thiserror::Error;

use crate::field::{FieldContext, FieldPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("received word has wrong length")]
    WrongLength,
    #[error("too many symbol errors to correct")]
    TooManyErrors,
}

#[derive(Debug, Clone)]
pub struct RsOuterCode {
    ctx: FieldContext,
    s_symbols: usize,
    d_symbols: usize,
    points: Vec<u64>,
    /// Π (x − α_i) over the evaluation points.
    locus: FieldPoly,
    /// Barycentric weights 1 / locus'(α_i).
    weights: Vec<u64>,
}

/// Builds a Reed–Solomon outer code mapping S symbols to D symbols over
/// GF(2^k_inner).
pub fn rs_outer_code(
    s_symbols: usize,
    d_symbols: usize,
    k_inner: u32,
) -> Result<RsOuterCode, RsError> {
    RsOuterCode::new(s_symbols, d_symbols, k_inner)
}

impl RsOuterCode {
    pub fn new(s_symbols: usize, d_symbols: usize, k_inner: u32) -> Result<Self, RsError> {
        if k_inner == 0 || k_inner > 16 {
            return Err(RsError::BadParams(format!(
                "symbol width {k_inner} outside 1..=16"
            )));
        }
        if s_symbols == 0 || s_symbols >= d_symbols {
            return Err(RsError::BadParams(format!(
                "need 0 < S < D, got S = {s_symbols}, D = {d_symbols}"
            )));
        }
        if (d_symbols as u64) > 1u64 << k_inner {
            return Err(RsError::BadParams(format!(
                "D = {d_symbols} exceeds the field size 2^{k_inner}"
            )));
        }
        let ctx = FieldContext::new(k_inner).map_err(|e| RsError::BadParams(e.to_string()))?;
        let points: Vec<u64> = (0..d_symbols as u64).collect();
        let mut locus = FieldPoly::constant(ctx, 1);
        for &p in &points {
            locus = locus.mul(&FieldPoly::new(ctx, vec![p, 1]));
        }
        // locus'(α_i) = Π_{j≠i} (α_i − α_j); over GF(2) the formal derivative
        // keeps the odd-degree terms.
        let derivative = formal_derivative(&locus);
        let weights = points
            .iter()
            .map(|&p| {
                let v = crate::field::poly_eval(&derivative, ctx.element(p))
                    .expect("same context")
                    .value();
                ctx.inv(v).expect("points are distinct")
            })
            .collect();
        Ok(Self {
            ctx,
            s_symbols,
            d_symbols,
            points,
            locus,
            weights,
        })
    }

    pub fn message_symbols(&self) -> usize {
        self.s_symbols
    }

    pub fn codeword_symbols(&self) -> usize {
        self.d_symbols
    }

    pub fn symbol_bits(&self) -> u32 {
        self.ctx.degree()
    }

    /// Guaranteed correctable symbol errors, floor((D − S)/2).
    pub fn correctable(&self) -> usize {
        (self.d_symbols - self.s_symbols) / 2
    }

    /// β = (D − S) / (2D), the correctable fraction.
    pub fn beta(&self) -> f64 {
        (self.d_symbols - self.s_symbols) as f64 / (2.0 * self.d_symbols as f64)
    }

    pub fn encode(&self, message: &[u64]) -> Result<Vec<u64>, RsError> {
        if message.len() != self.s_symbols {
            return Err(RsError::WrongLength);
        }
        let f = FieldPoly::new(self.ctx, message.to_vec());
        Ok(self
            .points
            .iter()
            .map(|&p| {
                crate::field::poly_eval(&f, self.ctx.element(p))
                    .expect("same context")
                    .value()
            })
            .collect())
    }

    /// Gao decoding. Returns the S message symbols or an error when more
    /// than floor((D − S)/2) symbols are corrupted.
    pub fn decode(&self, received: &[u64]) -> Result<Vec<u64>, RsError> {
        if received.len() != self.d_symbols {
            return Err(RsError::WrongLength);
        }
        let interpolant = self.interpolate(received);
        if interpolant.is_zero() {
            // The zero word is a codeword (message 0).
            return Ok(vec![0; self.s_symbols]);
        }
        // Partial extended Euclid on (locus, interpolant), stopping at the
        // first remainder of degree < (D + S)/2.
        let threshold = self.d_symbols + self.s_symbols;
        let mut r0 = self.locus.clone();
        let mut r1 = interpolant;
        let mut v0 = FieldPoly::zero(self.ctx);
        let mut v1 = FieldPoly::constant(self.ctx, 1);
        while r1.degree().is_some_and(|d| 2 * d >= threshold) {
            let (q, r2) = r0.div_rem(&r1);
            let v2 = v0.add(&q.mul(&v1));
            r0 = r1;
            r1 = r2;
            v0 = v1;
            v1 = v2;
        }
        let (f, rem) = r1.div_rem(&v1);
        if !rem.is_zero() || f.degree().is_some_and(|d| d >= self.s_symbols) {
            return Err(RsError::TooManyErrors);
        }
        let mut out = f.coeffs().to_vec();
        out.resize(self.s_symbols, 0);
        Ok(out)
    }

    /// Lagrange interpolation through (α_i, r_i) in barycentric form:
    /// Σ r_i · w_i · locus/(x − α_i).
    fn interpolate(&self, received: &[u64]) -> FieldPoly {
        let mut acc = FieldPoly::zero(self.ctx);
        for (i, &r) in received.iter().enumerate() {
            if r == 0 {
                continue;
            }
            let quotient = synthetic_div(&self.locus, self.points[i], self.ctx);
            acc = acc.add(&quotient.scale(self.ctx.mul(r, self.weights[i])));
        }
        acc
    }
}

/// locus / (x − a), exact by construction.
fn synthetic_div(poly: &FieldPoly, a: u64, ctx: FieldContext) -> FieldPoly {
    let coeffs = poly.coeffs();
    let mut out = vec![0u64; coeffs.len() - 1];
    let mut carry = 0u64;
    for i in (0..coeffs.len() - 1).rev() {
        carry = coeffs[i + 1] ^ ctx.mul(carry, a);
        out[i] = carry;
    }
    FieldPoly::new(ctx, out)
}

fn formal_derivative(poly: &FieldPoly) -> FieldPoly {
    let ctx = poly.ctx();
    let coeffs: Vec<u64> = poly
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
        .collect();
    FieldPoly::new(ctx, coeffs)
}
