//! Exact linear algebra over GF(2).
//!
//! Bits are packed into 64-bit words, little-endian within each word: bit `i`
//! of a vector lives at `words[i / 64] >> (i % 64) & 1`. Addition is bitwise
//! XOR. All types are immutable after construction and safe to share across
//! threads.
//!
//! Wire format: a [`BitVector`] serializes as `"<len>:<hex>"` where the hex is
//! the lowercase encoding of the packed little-endian bytes (e.g. `"12:0d0a"`
//! for the 12-bit vector with bits 0, 2, 3, 9, 11 set). A [`BitMatrix`]
//! serializes as one vector per line, row by row.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("message {m} out of range for {k} message bits")]
    MessageOutOfRange { m: u64, k: usize },
    #[error("vector is not in the span of the basis")]
    NotInSpan,
    #[error("invalid wire format: {0}")]
    BadWireFormat(String),
}

/// A vector over GF(2) with a fixed bit length.
///
/// Trailing padding bits beyond `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from the low `len` bits of `value`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 bits");
        assert!(
            len == 64 || value >> len == 0,
            "value {value} does not fit in {len} bits"
        );
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector with the given support positions set.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    /// Samples a uniformly random vector of the given length.
    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = rng.next_u64();
        }
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range ({})", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range ({})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Interprets the vector as an integer, little-endian. Requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 requires at most 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place XOR. Both vectors must have the same length.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of mismatched lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Positions of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut rem = w;
            while rem != 0 {
                let b = rem.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                rem &= rem - 1;
            }
        }
        out
    }

    /// The sub-vector covering bit positions `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Concatenates `self` followed by `other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in 0..self.len {
            if self.get(i) {
                out.set(i, true);
            }
        }
        for i in 0..other.len {
            if other.get(i) {
                out.set(self.len + i, true);
            }
        }
        out
    }

    /// Packed little-endian bytes (`ceil(len / 8)` of them).
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = Vec::with_capacity(nbytes);
        for i in 0..nbytes {
            let word = self.words[i / 8];
            out.push((word >> (8 * (i % 8))) as u8);
        }
        out
    }

    pub fn from_bytes(len: usize, bytes: &[u8]) -> Result<Self, LinalgError> {
        if bytes.len() != len.div_ceil(8) {
            return Err(LinalgError::BadWireFormat(format!(
                "{} bytes cannot hold exactly {len} bits",
                bytes.len()
            )));
        }
        let mut v = Self::zeros(len);
        for (i, &b) in bytes.iter().enumerate() {
            v.words[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let mut check = v.clone();
        check.mask_tail();
        if check.words != v.words {
            return Err(LinalgError::BadWireFormat(
                "padding bits beyond the bit length must be zero".into(),
            ));
        }
        Ok(v)
    }
}

impl fmt::Display for BitVector {
    /// Hex wire format, `"<len>:<hex>"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.len)?;
        for b in self.to_bytes() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (len_part, hex_part) = s
            .split_once(':')
            .ok_or_else(|| LinalgError::BadWireFormat("missing ':' separator".into()))?;
        let len: usize = len_part
            .parse()
            .map_err(|_| LinalgError::BadWireFormat(format!("bad bit length {len_part:?}")))?;
        if hex_part.len() % 2 != 0 {
            return Err(LinalgError::BadWireFormat("odd hex digit count".into()));
        }
        let bytes: Result<Vec<u8>, _> = (0..hex_part.len() / 2)
            .map(|i| u8::from_str_radix(&hex_part[2 * i..2 * i + 2], 16))
            .collect();
        let bytes = bytes.map_err(|_| LinalgError::BadWireFormat("bad hex digits".into()))?;
        Self::from_bytes(len, &bytes)
    }
}

/// A dense matrix over GF(2), row-major, each row padded to a word boundary.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        Self {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVector]) -> Self {
        assert!(!rows.is_empty(), "from_rows needs at least one row");
        let cols = rows[0].len();
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.set_row(r, row);
        }
        m
    }

    /// Fills a `rows x cols` matrix with uniformly random bits.
    pub fn random<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            let row = BitVector::random(cols, rng);
            m.set_row(r, &row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let idx = r * self.words_per_row + c / 64;
        let mask = 1u64 << (c % 64);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        assert!(r < self.rows, "row out of range");
        let start = r * self.words_per_row;
        BitVector {
            len: self.cols,
            words: self.data[start..start + self.words_per_row].to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, row: &BitVector) {
        assert!(r < self.rows && row.len() == self.cols, "row mismatch");
        let start = r * self.words_per_row;
        self.data[start..start + self.words_per_row].copy_from_slice(&row.words);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        let start = r * self.words_per_row;
        &self.data[start..start + self.words_per_row]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words_per_row, dst * self.words_per_row);
        for i in 0..self.words_per_row {
            let v = self.data[s + i];
            self.data[d + i] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for i in 0..w {
            self.data.swap(a * w + i, b * w + i);
        }
    }

    /// Stacks `self` on top of `other`; both must have the same column count.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "stack of mismatched widths");
        let mut m = BitMatrix::zeros(self.rows + other.rows, self.cols);
        m.data[..self.data.len()].copy_from_slice(&self.data);
        m.data[self.data.len()..].copy_from_slice(&other.data);
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Rows rendered in the hex wire format, one per line.
    pub fn to_wire(&self) -> String {
        (0..self.rows)
            .map(|r| self.row(r).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn from_wire(s: &str) -> Result<Self, LinalgError> {
        let rows: Result<Vec<BitVector>, _> = s.lines().map(|l| l.trim().parse()).collect();
        let rows = rows?;
        if rows.is_empty() {
            return Err(LinalgError::BadWireFormat("matrix with no rows".into()));
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(LinalgError::BadWireFormat("ragged matrix rows".into()));
        }
        Ok(Self::from_rows(&rows))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})", self.rows, self.cols)
    }
}

/// Matrix–vector product over GF(2).
///
/// Linear by construction: `mat_vec_mul(H, a ⊕ b) = mat_vec_mul(H, a) ⊕ mat_vec_mul(H, b)`.
pub fn mat_vec_mul(h: &BitMatrix, x: &BitVector) -> Result<BitVector, LinalgError> {
    if h.cols != x.len {
        return Err(LinalgError::DimensionMismatch(format!(
            "matrix has {} columns, vector has {} bits",
            h.cols, x.len
        )));
    }
    let mut out = BitVector::zeros(h.rows);
    for r in 0..h.rows {
        let mut acc = 0u64;
        for (a, b) in h.row_words(r).iter().zip(&x.words) {
            acc ^= a & b;
        }
        if acc.count_ones() & 1 == 1 {
            out.set(r, true);
        }
    }
    Ok(out)
}

/// Reduced row echelon form over GF(2).
///
/// Returns the reduced matrix together with the strictly increasing pivot
/// column indices. Row-equivalent to the input; idempotent.
pub fn rref(h: &BitMatrix) -> (BitMatrix, Vec<usize>) {
    let mut m = h.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pivot_row) = (r..m.rows).find(|&i| m.get(i, c)) else {
            continue;
        };
        m.swap_rows(r, pivot_row);
        for i in 0..m.rows {
            if i != r && m.get(i, c) {
                m.xor_row_into(r, i);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// A canonical basis of the null space of a parity-check matrix.
///
/// Basis vector `j` has bit 1 at the `j`-th free column (ascending order) and
/// 0 at every other free column, with the pivot bits back-solved; the basis
/// restricted to the free columns is therefore the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullSpaceBasis {
    pub n: usize,
    pub k: usize,
    pub basis: Vec<BitVector>,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
}

/// Computes the canonical null-space basis of `h`. Always well-defined; `k`
/// equals `h.cols() - rank(h)`.
pub fn null_space(h: &BitMatrix) -> NullSpaceBasis {
    let n = h.cols();
    let (reduced, pivot_cols) = rref(h);
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = BitVector::zeros(n);
        v.set(f, true);
        for (row, &p) in pivot_cols.iter().enumerate() {
            if reduced.get(row, f) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    NullSpaceBasis {
        n,
        k: free_cols.len(),
        basis,
        pivot_cols,
        free_cols,
    }
}

/// The `m`-th element of the null space under the canonical ordering: bit `j`
/// of `m` (little-endian) selects the basis vector of the `j`-th free column.
///
/// Injective in `m`; `m = 0` maps to the zero vector.
pub fn nullspace_codeword(basis: &NullSpaceBasis, m: u64) -> Result<BitVector, LinalgError> {
    if basis.k < 64 && m >> basis.k != 0 {
        return Err(LinalgError::MessageOutOfRange { m, k: basis.k });
    }
    let mut x = BitVector::zeros(basis.n);
    for j in 0..basis.k.min(64) {
        if m >> j & 1 == 1 {
            x.xor_assign(&basis.basis[j]);
        }
    }
    Ok(x)
}

/// Inverse of [`nullspace_codeword`]: reads the message bits directly off the
/// free-column positions, which is valid by the canonical basis shape.
///
/// Errors if `x` does not lie in the span of the basis.
pub fn message_of_codeword(basis: &NullSpaceBasis, x: &BitVector) -> Result<u64, LinalgError> {
    if x.len() != basis.n {
        return Err(LinalgError::DimensionMismatch(format!(
            "codeword has {} bits, basis ambient dimension is {}",
            x.len(),
            basis.n
        )));
    }
    assert!(basis.k <= 64, "message_of_codeword supports k <= 64");
    let mut m = 0u64;
    let mut check = BitVector::zeros(basis.n);
    for (j, &f) in basis.free_cols.iter().enumerate() {
        if x.get(f) {
            m |= 1 << j;
            check.xor_assign(&basis.basis[j]);
        }
    }
    if &check != x {
        return Err(LinalgError::NotInSpan);
    }
    Ok(m)
}
