//! Universal channel codes with shared randomness.
//!
//! The crate is organized around six pieces:
//!
//! * [`bitlinalg`] — exact linear algebra over GF(2): packed bit vectors and
//!   matrices, reduced row echelon form, null-space bases, and the canonical
//!   null-space enumeration used by every syndrome code.
//! * [`field`] — GF(2^s) arithmetic and polynomials over GF(2^s), including
//!   irreducible modulus search and Frobenius powering.
//! * [`fingerprint`] — seeded linear fingerprints F(x, ρ) = H_ρ·x and their
//!   inverters: the fully random linear family and the Reed–Solomon-based
//!   condenser family with pairwise-hash augmentation.
//! * [`channels`] — channel models and adversaries: oblivious noise sets,
//!   Hamming graph oracles, block channels, and executable randomness
//!   lower-bound attacks.
//! * [`codes`] — the code constructions: syndrome codes, the pairwise-hash
//!   Hamming code, the additive masking wrapper, concatenated block codes
//!   with a Reed–Solomon outer code, and a toy random code.
//! * [`harness`] — seeded Monte Carlo experiment runner, bound checkers,
//!   attack drivers, and machine-readable reports; the `unichan` binary is a
//!   thin CLI over this module.

pub mod bitlinalg;
pub mod channels;
pub mod codes;
pub mod field;
pub mod fingerprint;
pub mod harness;
pub mod seedmix;

pub use bitlinalg::{BitMatrix, BitVector, NullSpaceBasis};
pub use channels::{ChannelGraph, ChannelModel, NoiseSet};
pub use codes::{Code, DecodeFailure, Decoder};
pub use field::{FieldContext, FieldElement, FieldPoly};
pub use fingerprint::{GuvParams, LinearFingerprinter, SuspectList};
