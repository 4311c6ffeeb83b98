//! GF(2^s) arithmetic and polynomials over GF(2^s).
//!
//! Elements are residue polynomials stored in the low `s` bits of a `u64`;
//! addition is XOR, multiplication is schoolbook shift-and-XOR with on-the-fly
//! reduction by the context modulus. The modulus of GF(2^s) is the canonical
//! lexicographically smallest monic irreducible polynomial of degree `s` over
//! GF(2), where the comparison key is the coefficient tuple ordered low degree
//! first. `s` is capped at 64 so every element fits one machine word.
//!
//! Text forms: an element prints as the decimal integer of its bit
//! representation; a context prints its modulus as a hex bit mask.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported extension degree {0} (must be 1..=64)")]
    BadDegree(u32),
}

/// GF(2^s): the extension degree and the irreducible modulus (bit `i` of the
/// mask is the coefficient of x^i; bit `s` is always set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldContext {
    s: u32,
    modulus: u128,
}

impl FieldContext {
    /// GF(2) itself, with modulus x.
    pub const GF2: FieldContext = FieldContext {
        s: 1,
        modulus: 0b10,
    };

    /// Builds GF(2^s) with the canonical modulus.
    pub fn new(s: u32) -> Result<Self, FieldError> {
        if s == 0 || s > 64 {
            return Err(FieldError::BadDegree(s));
        }
        if s == 1 {
            return Ok(Self::GF2);
        }
        let poly = find_irreducible(s as usize, Self::GF2);
        let mut mask: u128 = 0;
        for (i, &c) in poly.coeffs.iter().enumerate() {
            mask |= (c as u128) << i;
        }
        Ok(Self { s, modulus: mask })
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn modulus_mask(&self) -> u128 {
        self.modulus
    }

    /// Number of field elements as a float (2^s, exact for s <= 52).
    pub fn order(&self) -> f64 {
        (self.s as f64).exp2()
    }

    fn element_mask(&self) -> u64 {
        if self.s == 64 {
            u64::MAX
        } else {
            (1u64 << self.s) - 1
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        value & !self.element_mask() == 0
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut acc: u128 = 0;
        let mut shifted = a as u128;
        let mut rem = b;
        while rem != 0 {
            if rem & 1 == 1 {
                acc ^= shifted;
            }
            rem >>= 1;
            shifted <<= 1;
            if shifted >> self.s & 1 == 1 {
                shifted ^= self.modulus;
            }
        }
        acc as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat: a^(2^s - 2).
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let e = if self.s == 64 {
            u64::MAX - 1
        } else {
            (1u64 << self.s) - 2
        };
        Ok(self.pow(a, e))
    }

    pub fn element(&self, value: u64) -> FieldElement {
        assert!(
            self.contains(value),
            "value does not fit in GF(2^{})",
            self.s
        );
        FieldElement { ctx: *self, value }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.s, self.modulus)
    }
}

/// An element of a [`FieldContext`]. Carries its context so that mixed-field
/// operations are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ctx: FieldContext,
    value: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn field_add(a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
    if a.ctx != b.ctx {
        return Err(FieldError::ContextMismatch);
    }
    Ok(FieldElement {
        ctx: a.ctx,
        value: a.ctx.add(a.value, b.value),
    })
}

/// (a·b) mod the context modulus. Commutative, associative, distributes over XOR.
pub fn field_mul(a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
    if a.ctx != b.ctx {
        return Err(FieldError::ContextMismatch);
    }
    Ok(FieldElement {
        ctx: a.ctx,
        value: a.ctx.mul(a.value, b.value),
    })
}

/// A polynomial over GF(2^s), coefficients lowest degree first, canonical form
/// (no trailing zero coefficients; the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPoly {
    ctx: FieldContext,
    coeffs: Vec<u64>,
}

impl FieldPoly {
    pub fn new(ctx: FieldContext, mut coeffs: Vec<u64>) -> Self {
        assert!(coeffs.iter().all(|&c| ctx.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    pub fn zero(ctx: FieldContext) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ctx: FieldContext, c: u64) -> Self {
        Self::new(ctx, vec![c])
    }

    /// The monomial x.
    pub fn x(ctx: FieldContext) -> Self {
        Self::new(ctx, vec![0, 1])
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        assert_eq!(self.ctx, other.ctx, "polynomial context mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        FieldPoly::new(self.ctx, coeffs)
    }

    pub fn mul(&self, other: &FieldPoly) -> FieldPoly {
        assert_eq!(self.ctx, other.ctx, "polynomial context mismatch");
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(self.ctx);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] ^= self.ctx.mul(a, b);
            }
        }
        FieldPoly::new(self.ctx, coeffs)
    }

    pub fn scale(&self, c: u64) -> FieldPoly {
        let coeffs = self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect();
        FieldPoly::new(self.ctx, coeffs)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &FieldPoly) -> (FieldPoly, FieldPoly) {
        assert_eq!(self.ctx, divisor.ctx, "polynomial context mismatch");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = self.ctx.inv(*divisor.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let pos = rem.len() - 1;
            let lead = rem[pos];
            if lead != 0 {
                let q = self.ctx.mul(lead, lead_inv);
                quot[pos - dd] = q;
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    rem[pos - dd + i] ^= self.ctx.mul(q, c);
                }
            }
            rem.pop();
        }
        (
            FieldPoly::new(self.ctx, quot),
            FieldPoly::new(self.ctx, rem),
        )
    }

    pub fn rem(&self, modulus: &FieldPoly) -> FieldPoly {
        self.div_rem(modulus).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &FieldPoly) -> FieldPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead_inv = self.ctx.inv(*a.coeffs.last().unwrap()).unwrap();
        a.scale(lead_inv)
    }
}

/// Horner evaluation of `f` at `y`.
pub fn poly_eval(f: &FieldPoly, y: FieldElement) -> Result<FieldElement, FieldError> {
    if f.ctx != y.ctx {
        return Err(FieldError::ContextMismatch);
    }
    let mut acc = 0u64;
    for &c in f.coeffs.iter().rev() {
        acc = f.ctx.add(f.ctx.mul(acc, y.value), c);
    }
    Ok(FieldElement {
        ctx: f.ctx,
        value: acc,
    })
}

/// f^(2^k) mod E by k successive (square, reduce) steps.
///
/// Over characteristic 2 this is additive in f: (f ⊕ g)^(2^k) ≡ f^(2^k) ⊕ g^(2^k) (mod E).
pub fn poly_mod_pow2k(f: &FieldPoly, k: u32, e: &FieldPoly) -> FieldPoly {
    assert_eq!(f.ctx(), e.ctx(), "polynomial context mismatch");
    assert!(e.is_monic(), "modulus must be monic");
    let mut r = f.rem(e);
    for _ in 0..k {
        r = r.mul(&r).rem(e);
    }
    r
}

/// Tests irreducibility of a monic polynomial over GF(2^s) by the standard
/// Frobenius criterion: x^(q^d) ≡ x (mod f), and gcd(x^(q^(d/p)) − x, f) = 1
/// for every prime p dividing d, where q = 2^s.
pub fn is_irreducible(f: &FieldPoly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    if !f.is_monic() {
        return false;
    }
    let ctx = f.ctx();
    let s = ctx.degree();
    let x = FieldPoly::x(ctx);
    // frob[j] = x^(q^j) mod f, built by repeated Frobenius application.
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(x.rem(f));
    for _ in 0..d {
        let next = poly_mod_pow2k(frob.last().unwrap(), s, f);
        frob.push(next);
    }
    if frob[d] != x.rem(f) {
        return false;
    }
    for p in prime_divisors(d) {
        let diff = frob[d / p].add(&x);
        let g = f.gcd(&diff);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns the lexicographically smallest monic irreducible polynomial of the
/// given degree over `ctx`. The comparison key is the coefficient tuple
/// (c_0, ..., c_{d-1}) ordered low degree first, with coefficients compared as
/// integers.
pub fn find_irreducible(degree: usize, ctx: FieldContext) -> FieldPoly {
    assert!(degree >= 1, "degree must be at least 1");
    // Degree >= 2 candidates with zero constant term are divisible by x, so
    // the scan starts at c_0 = 1. Degree 1 starts at c_0 = 0, giving x itself.
    let mut digits = vec![0u64; degree];
    if degree >= 2 {
        digits[0] = 1;
    }
    let q_minus_1 = ctx.element_mask();
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let candidate = FieldPoly::new(ctx, coeffs);
        if is_irreducible(&candidate) {
            return candidate;
        }
        // Odometer in lexicographic order: the last coordinate moves fastest.
        let mut i = degree;
        loop {
            assert!(i > 0, "no irreducible polynomial found (unreachable)");
            i -= 1;
            if digits[i] == q_minus_1 {
                digits[i] = 0;
            } else {
                digits[i] += 1;
                break;
            }
        }
    }
}
