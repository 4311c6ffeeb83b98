//! Property tests over the core invariants.

use std::sync::Arc;

use proptest::prelude::*;

use unichan::bitlinalg::{
    mat_vec_mul, message_of_codeword, null_space, nullspace_codeword, rref, BitMatrix, BitVector,
};
use unichan::channels::{ChannelModel, NoiseSet};
use unichan::codes::{Code, RsOuterCode, SyndromeCode};
use unichan::field::FieldContext;
use unichan::fingerprint::{LinearFingerprinter, RandomLinearFingerprinter};
use unichan::seedmix;

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|v| BitVector::from_bits(&v))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows).prop_map(|rs| {
        let rows: Vec<BitVector> = rs.iter().map(|r| BitVector::from_bits(r)).collect();
        BitMatrix::from_rows(&rows)
    })
}

proptest! {
    /// Hex wire format round-trips any vector.
    #[test]
    fn wire_format_round_trip(len in 1usize..200, seed in any::<u64>()) {
        let mut rng = seedmix::rng_from_parts(&[seed]);
        let v = BitVector::random(len, &mut rng);
        let back: BitVector = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
    }

    /// Matrix-vector products are linear at widths past one word.
    #[test]
    fn mat_vec_linear(h in matrix(6, 90), a in bits(90), b in bits(90)) {
        let lhs = mat_vec_mul(&h, &a.xor(&b)).unwrap();
        let rhs = mat_vec_mul(&h, &a).unwrap().xor(&mat_vec_mul(&h, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// rref is idempotent and preserves rank.
    #[test]
    fn rref_idempotent(h in matrix(5, 12)) {
        let (m, p) = rref(&h);
        let (m2, p2) = rref(&m);
        prop_assert_eq!(&m, &m2);
        prop_assert_eq!(p, p2);
    }

    /// The canonical null-space enumeration and its inverse are a bijection
    /// on the kernel.
    #[test]
    fn nullspace_enumeration_round_trip(h in matrix(4, 14), m in any::<u64>()) {
        let ns = null_space(&h);
        let m = m & ((1 << ns.k) - 1);
        let x = nullspace_codeword(&ns, m).unwrap();
        prop_assert!(mat_vec_mul(&h, &x).unwrap().is_zero());
        prop_assert_eq!(message_of_codeword(&ns, &x).unwrap(), m);
    }

    /// Field multiplication distributes over addition in GF(2^s).
    #[test]
    fn field_distributive(s in 2u32..16, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let ctx = FieldContext::new(s).unwrap();
        let mask = (1u64 << s) - 1;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(ctx.mul(a, b ^ c), ctx.mul(a, b) ^ ctx.mul(a, c));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
    }

    /// Every fingerprint is linear in its input for any seed.
    #[test]
    fn fingerprint_linear(seed in any::<u64>(), x in bits(20), y in bits(20)) {
        let fp = RandomLinearFingerprinter::new(20, 5, 0.125, 17).unwrap();
        let mut rng = seedmix::rng_from_parts(&[seed]);
        let rho = fp.sample_seed(&mut rng);
        let lhs = fp.apply(&x.xor(&y), &rho);
        let rhs = fp.apply(&x, &rho).xor(&fp.apply(&y, &rho));
        prop_assert_eq!(lhs, rhs);
    }

    /// Syndrome codes round-trip every message under zero noise, and the
    /// transmitted difference always lies in the noise set.
    #[test]
    fn syndrome_round_trip(seed in any::<u64>(), m in any::<u64>()) {
        let fp = RandomLinearFingerprinter::new(16, 3, 0.25, 23).unwrap();
        let code = SyndromeCode::new(Arc::new(fp), 3, 0.25).unwrap();
        let mut rng = seedmix::rng_from_parts(&[seed, 1]);
        let rho = BitVector::random(code.seed_bits(), &mut rng);
        let msg = BitVector::from_u64(m & ((1 << code.k()) - 1), code.k());
        let x = code.encode(&msg, &rho).unwrap();
        let zero_noise = NoiseSet::new(vec![BitVector::zeros(16)]).unwrap();
        let dec0 = code
            .decoder_for(&ChannelModel::Oblivious { noise: zero_noise })
            .unwrap();
        prop_assert_eq!(dec0.decode(&x, &rho).unwrap(), msg.clone());
        // With a two-element noise set the decoder recovers the noisy word
        // exactly when the two fingerprints differ (else it reports the
        // ambiguity as a failure).
        let e = BitVector::random(16, &mut rng);
        let noise = NoiseSet::new(vec![BitVector::zeros(16), e.clone()]).unwrap();
        let dec = code.decoder_for(&ChannelModel::Oblivious { noise }).unwrap();
        let h = code.fingerprinter().matrix_of(&rho);
        if !e.is_zero() {
            if mat_vec_mul(&h, &e).unwrap().is_zero() {
                prop_assert!(dec.decode(&x.xor(&e), &rho).is_err());
            } else {
                prop_assert_eq!(dec.decode(&x.xor(&e), &rho).unwrap(), msg);
            }
        }
    }

    /// Reed-Solomon corrects any error pattern within half the distance.
    #[test]
    fn rs_corrects_within_distance(
        msg in proptest::collection::vec(0u64..16, 5),
        positions in proptest::collection::btree_set(0usize..15, 0..=5),
        deltas in proptest::collection::vec(1u64..16, 5),
    ) {
        let code = RsOuterCode::new(5, 15, 4).unwrap();
        let mut received = code.encode(&msg).unwrap();
        for (i, &pos) in positions.iter().enumerate() {
            received[pos] ^= deltas[i % deltas.len()];
        }
        prop_assert_eq!(code.decode(&received).unwrap(), msg);
    }
}
