//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers (run with `cargo test --test acceptance --
//! --nocapture` to see them).

use std::sync::Arc;

use unichan::bitlinalg::BitVector;
use unichan::channels::{
    lb_attack_hamming, noise_set_family, ChannelModel, NoiseSpec, TwoMessageEncoder, TwoMsg,
};
use unichan::codes::{
    additive_hamming_wrap, Code, ConcatMemoryless, ConcatPiecewise, HammingHashCode, InnerParams,
    OuterParams, RandomToyCode, SyndromeCode, ToyParams,
};
use unichan::field::FieldContext;
use unichan::fingerprint::{
    invert, GuvCondenser, GuvFingerprinter, GuvParams, LinearFingerprinter,
    RandomLinearFingerprinter, SuspectList,
};
use unichan::harness::{
    build_code, check_rate_bound, run_experiment, run_oblivious_attack, CodeDescriptor,
    ExperimentSpec, ObliviousAttackSpec, Verdict,
};
use unichan::seedmix;

fn spec(json: serde_json::Value) -> ExperimentSpec {
    serde_json::from_value(json).expect("valid spec")
}

/// Criterion 1 — syndrome-code resilience at n=48, t=10, eps=2^-6: k = 32
/// exactly, and for 20 random noise sets of size 1024 the worst fixed noise
/// vector stays under the Wilson-99 gate at 1.5*eps over 10^4 seeds per set.
#[test]
fn c01_syndrome_resilience() {
    let eps = 1.0 / 64.0;
    let code = build_code(&spec_code_c01()).unwrap();
    assert_eq!(code.k(), 32, "k = n - t - log2(1/eps) must be 32");
    let mut worst_hi: f64 = 0.0;
    for set_seed in 0..20u64 {
        let s = spec(serde_json::json!({
            "code": {
                "scheme": "syndrome", "n": 48, "t": 10, "epsilon": eps,
                "fingerprinter": {"type": "random-linear"}
            },
            "channel": {
                "scenario": "oblivious",
                "noise": {"kind": "random-subset", "n": 48, "size": 1024, "seed": set_seed}
            },
            "noise_policy": "worst-fixed",
            "probe_trials": 256,
            "trials": 10_000,
            "master_seed": 0xC0DEC0DEu64 + set_seed,
            "epsilon_target": eps,
            "slack_factor": 0.5
        }));
        let report = run_experiment(&s).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Pass,
            "set {set_seed}: wilson_hi {} above 1.5*eps",
            report.wilson_hi
        );
        worst_hi = worst_hi.max(report.wilson_hi);
    }
    println!(
        "ACCEPTANCE C01 syndrome-resilience: PASS (k=32, worst wilson_hi {worst_hi:.5} <= {:.5})",
        1.5 * eps
    );
}

fn spec_code_c01() -> CodeDescriptor {
    serde_json::from_value(serde_json::json!({
        "scheme": "syndrome", "n": 48, "t": 10, "epsilon": 1.0/64.0,
        "fingerprinter": {"type": "random-linear"}
    }))
    .unwrap()
}

/// Criterion 2 — pairwise independence of h_{a,b}(x) = ax + b over GF(256):
/// exhaustive over all (a, b), every distinct message pair hits every value
/// pair exactly once. Zero tolerance.
#[test]
fn c02_pairwise_independence_exhaustive() {
    let ctx = FieldContext::new(8).unwrap();
    // For each a precompute the full multiplication row.
    let mut rows = vec![[0u8; 256]; 256];
    for a in 0..256u64 {
        for x in 0..256u64 {
            rows[a as usize][x as usize] = ctx.mul(a, x) as u8;
        }
    }
    let mut stamp = vec![0u32; 1 << 16];
    let mut generation = 0u32;
    for m1 in 0..256usize {
        for m2 in m1 + 1..256 {
            generation += 1;
            for row in &rows {
                let p1 = row[m1];
                let p2 = row[m2];
                for b in 0..256u16 {
                    let u = p1 ^ b as u8;
                    let v = p2 ^ b as u8;
                    let cell = ((u as usize) << 8) | v as usize;
                    assert_ne!(
                        stamp[cell], generation,
                        "pair ({m1},{m2}) hits ({u},{v}) twice"
                    );
                    stamp[cell] = generation;
                }
            }
            // 2^16 seed pairs marked 2^16 distinct cells: exactly once each.
        }
    }
    println!(
        "ACCEPTANCE C02 pairwise-independence: PASS (32640 message pairs x 65536 seeds, all exact)"
    );
}

/// Criterion 3 — the hash code at n=16, t=6, eps=1/16 has k = 6 exactly and
/// survives a brute-force adversarial channel function on the radius-1 ball
/// graph (T = 17 <= 2^6) with Wilson-99 upper at most 1.5*eps over 10^4 seeds.
#[test]
fn c03_hamming_hash_code() {
    let code = HammingHashCode::new(16, 6, 1.0 / 16.0).unwrap();
    assert_eq!(code.k(), 6);
    let s = spec(serde_json::json!({
        "code": {"scheme": "hash", "n": 16, "t": 6, "epsilon": 0.0625},
        "channel": {"scenario": "hamming", "graph": {"kind": "hamming-ball", "n": 16, "w": 1}},
        "message_policy": "random",
        "message_count": 10,
        "noise_policy": "worst-fixed",
        "probe_trials": 24,
        "trials": 10_000,
        "epsilon_target": 0.0625,
        "slack_factor": 0.5
    }));
    let report = run_experiment(&s).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    println!(
        "ACCEPTANCE C03 hamming-hash-code: PASS (k=6, failures {}, wilson_hi {:.5} <= {:.5})",
        report.failure_fraction, report.wilson_hi, report.pass_threshold
    );
}

/// Criterion 4 — condenser linearity at s=4, n=16, m_blocks in {1,2,3}:
/// the matrix agrees with direct evaluation on 10^3 random (x, y) pairs and
/// direct evaluation is additive on 10^3 random pairs. Zero tolerance.
#[test]
fn c04_guv_linearity() {
    use rand::Rng;
    let mut rng = seedmix::rng_from_parts(&[0xacc, 4]);
    for m_blocks in 1..=3u32 {
        let params = GuvParams {
            s: 4,
            h_log: 1,
            m_blocks,
            hash_bits: 0,
        };
        let cond = GuvCondenser::new(params, 16).unwrap();
        for _ in 0..1000 {
            let y = rng.gen_range(0..16u64);
            let x = BitVector::random(16, &mut rng);
            let a_y = cond.matrix(y);
            assert_eq!(
                unichan::bitlinalg::mat_vec_mul(&a_y, &x).unwrap(),
                cond.condense(&x, y),
                "matrix route diverges at m_blocks={m_blocks}"
            );
        }
        for _ in 0..1000 {
            let y = rng.gen_range(0..16u64);
            let x1 = BitVector::random(16, &mut rng);
            let x2 = BitVector::random(16, &mut rng);
            assert_eq!(
                cond.condense(&x1.xor(&x2), y),
                cond.condense(&x1, y).xor(&cond.condense(&x2, y)),
                "additivity fails at m_blocks={m_blocks}"
            );
        }
    }
    println!("ACCEPTANCE C04 guv-linearity: PASS (m_blocks 1..3, 1000 matrix + 1000 additivity checks each, exact)");
}

/// Criterion 5 — invertible-function contract at n=32, t=8, eps=2^-4 with an
/// adversarial suspect list (Hamming ball around x): inversion success over
/// 10^4 seeds is at least 1 - eps - 3*sigma.
#[test]
fn c05_invertible_function_contract() {
    let (n, t, eps) = (32usize, 8u32, 1.0 / 16.0);
    let fp = RandomLinearFingerprinter::new(n, t, eps, 0).unwrap();
    let mut rng = seedmix::rng_from_parts(&[0xacc, 5]);
    let x = BitVector::random(n, &mut rng);
    let suspects = SuspectList::hamming_neighborhood(&x, 1 << t);
    assert_eq!(suspects.len(), 256);
    let trials = 10_000u32;
    let mut successes = 0u32;
    for _ in 0..trials {
        let rho = fp.sample_seed(&mut rng);
        let p = fp.apply(&x, &rho);
        if invert(&fp, &suspects, &p, &rho).as_ref() == Ok(&x) {
            successes += 1;
        }
    }
    let sigma = (eps * (1.0 - eps) / trials as f64).sqrt();
    let threshold = 1.0 - eps - 3.0 * sigma;
    let rate = successes as f64 / trials as f64;
    assert!(rate >= threshold, "success {rate:.5} below {threshold:.5}");
    println!("ACCEPTANCE C05 invertible-function: PASS (success {rate:.5} >= {threshold:.5})");
}

/// Criterion 6 — the sphere-packing rate bound holds with nonnegative margin
/// for every shipped construction over a sweep of >= 50 (n, t, eps) triples.
#[test]
fn c06_rate_bound_sweep() {
    let mut checked = 0usize;
    let mut audit = |code: &dyn Code, label: &str| {
        let report = check_rate_bound(code);
        assert!(
            report.ok,
            "{label}: margin {} negative at n={} t={} eps={}",
            report.margin, report.n, report.t, report.epsilon
        );
        checked += 1;
    };
    for n in [16usize, 24, 32, 48] {
        for t in [2u32, 4, 8] {
            for eps in [0.25, 1.0 / 16.0, 1.0 / 64.0] {
                let Ok(fp) = RandomLinearFingerprinter::new(n, t, eps, 6) else {
                    continue;
                };
                let fp: Arc<dyn LinearFingerprinter> = Arc::new(fp);
                let Ok(code) = SyndromeCode::new(fp, t, eps) else {
                    continue;
                };
                audit(&code, "syndrome/random-linear");
                let wrapped = additive_hamming_wrap(Arc::new(code));
                audit(&wrapped, "additive wrapper");
            }
        }
    }
    for (n, t, params) in [
        (
            16usize,
            4u32,
            GuvParams {
                s: 4,
                h_log: 1,
                m_blocks: 1,
                hash_bits: 4,
            },
        ),
        (
            16,
            4,
            GuvParams {
                s: 4,
                h_log: 2,
                m_blocks: 2,
                hash_bits: 0,
            },
        ),
        (
            32,
            8,
            GuvParams {
                s: 4,
                h_log: 1,
                m_blocks: 2,
                hash_bits: 4,
            },
        ),
        (
            32,
            8,
            GuvParams {
                s: 8,
                h_log: 1,
                m_blocks: 1,
                hash_bits: 8,
            },
        ),
    ] {
        let fp: Arc<dyn LinearFingerprinter> =
            Arc::new(GuvFingerprinter::new(n, t, 1.0 / 16.0, params).unwrap());
        let code = SyndromeCode::new(fp, t, 1.0 / 16.0).unwrap();
        audit(&code, "syndrome/guv");
    }
    for n in [12usize, 16, 24] {
        for t in [3u32, 6] {
            for eps in [0.125, 1.0 / 16.0] {
                let Ok(code) = HammingHashCode::new(n, t, eps) else {
                    continue;
                };
                audit(&code, "hash");
            }
        }
    }
    for (inner, outer) in [
        (
            InnerParams {
                n: 16,
                t: 4,
                epsilon: 1.0 / 16.0,
            },
            OuterParams {
                message_symbols: 9,
                blocks: 16,
            },
        ),
        (
            InnerParams {
                n: 16,
                t: 4,
                epsilon: 1.0 / 16.0,
            },
            OuterParams {
                message_symbols: 179,
                blocks: 256,
            },
        ),
    ] {
        audit(
            &ConcatMemoryless::new(inner, outer).unwrap(),
            "concat-memoryless",
        );
    }
    for (inner, outer) in [
        (
            InnerParams {
                n: 12,
                t: 4,
                epsilon: 1.0 / 16.0,
            },
            OuterParams {
                message_symbols: 9,
                blocks: 16,
            },
        ),
        (
            InnerParams {
                n: 16,
                t: 5,
                epsilon: 1.0 / 16.0,
            },
            OuterParams {
                message_symbols: 88,
                blocks: 128,
            },
        ),
    ] {
        audit(
            &ConcatPiecewise::new(inner, outer).unwrap(),
            "concat-piecewise",
        );
    }
    for seed in [1u64, 2] {
        let code = RandomToyCode::new(ToyParams {
            n: 12,
            k: 2,
            t: 3,
            epsilon: 0.75,
            r_seeds: 64,
            seed,
        })
        .unwrap();
        audit(&code, "random-toy");
    }
    assert!(checked >= 50, "only {checked} parameter triples audited");
    println!("ACCEPTANCE C06 rate-bound: PASS ({checked} constructions, all margins >= 0)");
}

/// Criterion 7 — any two-message code restricted to D = 2^d <= t seed values
/// is defeated: the span attack certifies failure >= 1/2 by exhaustive
/// search at D <= 16.
#[test]
fn c07_oblivious_randomness_lower_bound() {
    // Syndrome code over the uniform family, three seed budgets.
    for num_seeds in [2usize, 8, 16] {
        let s = ObliviousAttackSpec {
            code: serde_json::from_value(serde_json::json!({
                "scheme": "syndrome", "n": 32, "t": 16, "epsilon": 0.0625,
                "fingerprinter": {"type": "random-linear"}
            }))
            .unwrap(),
            num_seeds,
            master_seed: 7,
        };
        let outcome = run_oblivious_attack(&s).unwrap();
        assert!(outcome.report.exhaustive);
        assert!(
            2 * outcome.report.failures >= outcome.report.seeds,
            "D={num_seeds}: failure {}/{}",
            outcome.report.failures,
            outcome.report.seeds
        );
    }
    // Condenser-based syndrome code.
    let s = ObliviousAttackSpec {
        code: serde_json::from_value(serde_json::json!({
            "scheme": "syndrome", "n": 32, "t": 8, "epsilon": 0.0625,
            "fingerprinter": {"type": "guv",
                "params": {"s": 4, "h_log": 1, "m_blocks": 2, "hash_bits": 0}}
        }))
        .unwrap(),
        num_seeds: 8,
        master_seed: 8,
    };
    let outcome = run_oblivious_attack(&s).unwrap();
    assert!(2 * outcome.report.failures >= outcome.report.seeds);
    // Toy code (its greedy decoder ignores the seed entirely).
    let s = ObliviousAttackSpec {
        code: serde_json::from_value(serde_json::json!({
            "scheme": "random-toy", "n": 12, "k": 2, "t": 4,
            "epsilon": 0.75, "r_seeds": 64, "seed": 3
        }))
        .unwrap(),
        num_seeds: 4,
        master_seed: 9,
    };
    let outcome = run_oblivious_attack(&s).unwrap();
    assert!(2 * outcome.report.failures >= outcome.report.seeds);
    println!("ACCEPTANCE C07 oblivious-lower-bound: PASS (failure >= 1/2 certified at D in {{2,8,16}}, exact)");
}

struct MixEncoder {
    n_nodes: u64,
    seeds: usize,
    salt: u64,
}

impl TwoMessageEncoder for MixEncoder {
    fn num_codewords(&self) -> u64 {
        self.n_nodes
    }
    fn num_seeds(&self) -> usize {
        self.seeds
    }
    fn encode(&self, msg: TwoMsg, i: usize) -> u64 {
        use rand::Rng;
        match self.salt {
            // A structured encoder: walks the node set.
            0 => {
                let base = (i as u64 * 5 + 3) % self.n_nodes;
                if msg == TwoMsg::A {
                    base
                } else {
                    (base + 1) % self.n_nodes
                }
            }
            // Constant encoder.
            1 => 2,
            salt => {
                let tag = if msg == TwoMsg::A { 0 } else { 1 };
                let mut r = seedmix::rng_from_parts(&[salt, tag, i as u64]);
                r.gen_range(0..self.n_nodes)
            }
        }
    }
}

/// Criterion 8 — for T in {4, 8} and arbitrary encoders with T^2 seeds on
/// N = 4T codewords, the constructed graph yields common-neighbor
/// probability >= 1/3 and all degrees <= 2T, exactly by enumeration.
#[test]
fn c08_hamming_randomness_lower_bound() {
    let mut cases = 0;
    for t in [4u64, 8] {
        for salt in 0..8u64 {
            let enc = MixEncoder {
                n_nodes: 4 * t,
                seeds: (t * t) as usize,
                salt,
            };
            let report = lb_attack_hamming(&enc, t).unwrap();
            assert!(
                3 * report.common_neighbor_events as u64 >= report.seeds as u64,
                "T={t} salt={salt}: events {}/{}",
                report.common_neighbor_events,
                report.seeds
            );
            assert!(
                report.max_left_degree <= 2 * t,
                "T={t} salt={salt}: left degree"
            );
            assert!(
                report.max_right_degree <= 2 * t,
                "T={t} salt={salt}: right degree"
            );
            // Full-degree audit by enumeration over every node.
            for v in 0..4 * t {
                assert!(report.graph.neighbors(v).len() as u64 <= 2 * t);
                assert!(report.graph.left_neighbors(v).len() as u64 <= 2 * t);
                assert!(!report.graph.neighbors(v).is_empty(), "left degree >= 1");
            }
            cases += 1;
        }
    }
    println!("ACCEPTANCE C08 hamming-lower-bound: PASS ({cases} encoders, rate >= 1/3 and degrees <= 2T, exact)");
}

/// Criterion 9 — memoryless concatenation with inner n=16, t=4, |E|=16 and a
/// Reed-Solomon outer code with beta >= 0.15: word failure <= 1% over 200
/// trials at D=256, nonincreasing as D doubles through {64, 128, 256}.
#[test]
fn c09_concat_memoryless() {
    let run = |blocks: usize, message_symbols: usize| {
        let code = ConcatMemoryless::new(
            InnerParams {
                n: 16,
                t: 4,
                epsilon: 1.0 / 16.0,
            },
            OuterParams {
                message_symbols,
                blocks,
            },
        )
        .unwrap();
        assert!(code.outer().beta() >= 0.15, "beta {}", code.outer().beta());
        assert_eq!(code.seed_bits(), 0);
        let s = spec(serde_json::json!({
            "code": {"scheme": "concat-memoryless", "inner_n": 16, "inner_t": 4,
                     "inner_epsilon": 0.0625, "message_symbols": message_symbols,
                     "blocks": blocks},
            "channel": {"scenario": "memoryless-blocks",
                        "noise": {"kind": "random-subset", "n": 16, "size": 16, "seed": 99},
                        "blocks": blocks},
            "message_policy": "random",
            "message_count": 8,
            "trials": 200,
            "epsilon_target": 0.01,
            "slack_factor": 0.0
        }));
        run_experiment(&s).unwrap()
    };
    let r32 = run(32, 22);
    let r64 = run(64, 44);
    let r128 = run(128, 89);
    let r256 = run(256, 179);
    assert!(
        r256.failure_rate <= 0.01,
        "word failure {}",
        r256.failure_rate
    );
    let sweep = [
        r32.failure_rate,
        r64.failure_rate,
        r128.failure_rate,
        r256.failure_rate,
    ];
    assert!(
        sweep.windows(2).all(|w| w[0] >= w[1]),
        "not monotone: {sweep:?}"
    );
    println!(
        "ACCEPTANCE C09 concat-memoryless: PASS (failure {} at D=256; D sweep {sweep:?} nonincreasing)",
        r256.failure_fraction
    );
}

/// Criterion 10 — piecewise concatenation at D=128: the shared-randomness
/// count equals 2nD exactly and word failure stays <= 2% over 200 trials
/// against adversarial per-block channel functions.
#[test]
fn c10_concat_piecewise() {
    let code = ConcatPiecewise::new(
        InnerParams {
            n: 16,
            t: 5,
            epsilon: 1.0 / 16.0,
        },
        OuterParams {
            message_symbols: 88,
            blocks: 128,
        },
    )
    .unwrap();
    assert_eq!(code.seed_bits(), 2 * 16 * 128, "shared bits must equal 2nD");
    let s = spec(serde_json::json!({
        "code": {"scheme": "concat-piecewise", "inner_n": 16, "inner_t": 5,
                 "inner_epsilon": 0.0625, "message_symbols": 88, "blocks": 128},
        "channel": {"scenario": "piecewise-blocks",
                    "graph": {"kind": "hamming-ball", "n": 16, "w": 1}, "blocks": 128},
        "message_policy": "random",
        "message_count": 4,
        "noise_policy": "worst-fixed",
        "probe_trials": 16,
        "trials": 200,
        "epsilon_target": 0.02,
        "slack_factor": 0.0
    }));
    let report = run_experiment(&s).unwrap();
    assert!(
        report.failure_rate <= 0.02,
        "word failure {}",
        report.failure_rate
    );
    assert_eq!(report.d_bits, 2 * 16 * 128);
    println!(
        "ACCEPTANCE C10 concat-piecewise: PASS (d = 2nD = {}, failure {} <= 2%)",
        report.d_bits, report.failure_fraction
    );
}

/// Criterion 11 — the additive masking wrapper around the uniform syndrome
/// code at n=32, t=8, eps=2^-4 holds a decoder-aware channel function to
/// Wilson-99 upper at most 1.5*eps over 10^4 seeds.
#[test]
fn c11_additive_wrapper() {
    let s = spec(serde_json::json!({
        "code": {"scheme": "additive", "inner": {
            "scheme": "syndrome", "n": 32, "t": 8, "epsilon": 0.0625,
            "fingerprinter": {"type": "random-linear"}
        }},
        "channel": {"scenario": "additive-hamming",
                    "noise": {"kind": "random-subset", "n": 32, "size": 256, "seed": 11}},
        "noise_policy": "worst-fixed",
        "probe_trials": 128,
        "trials": 10_000,
        "epsilon_target": 0.0625,
        "slack_factor": 0.5
    }));
    let report = run_experiment(&s).unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    println!(
        "ACCEPTANCE C11 additive-wrapper: PASS (failures {}, wilson_hi {:.5} <= {:.5})",
        report.failure_fraction, report.wilson_hi, report.pass_threshold
    );
}

/// Criterion 12 — the toy random code at n=12, k=2, t=3, R=64: the overlap
/// condition holds by exhaustive intersection counting on 5 random noise
/// sets, and exhaustive greedy decoding fails on at most an eps fraction of
/// seeds for every (message, noise vector).
#[test]
fn c12_toy_nonexplicit_code() {
    let eps = 0.75;
    let code = RandomToyCode::new(ToyParams {
        n: 12,
        k: 2,
        t: 3,
        epsilon: eps,
        r_seeds: 64,
        seed: 12,
    })
    .unwrap();
    let budget = (eps * 64.0) as usize; // eps * R
    let mut max_overlap = 0usize;
    let mut max_failures = 0usize;
    for set_seed in 0..5u64 {
        let noise = noise_set_family(&NoiseSpec::RandomSubset {
            n: 12,
            size: 8,
            seed: 100 + set_seed,
            include_zero: false,
        })
        .unwrap();
        let decoder = code
            .decoder_for(&ChannelModel::Oblivious {
                noise: noise.clone(),
            })
            .unwrap();
        for m in 0..4u64 {
            let msg = BitVector::from_u64(m, 2);
            for e in noise.elements() {
                let overlap = code.overlap_count(m, e, &noise);
                assert!(
                    overlap <= budget,
                    "set {set_seed}, m={m}, e={e}: overlap {overlap} > {budget}"
                );
                max_overlap = max_overlap.max(overlap);
                let mut failures = 0usize;
                for rho in 0..64u64 {
                    let rv = BitVector::from_u64(rho, code.seed_bits());
                    let x = code.encode(&msg, &rv).unwrap();
                    if decoder.decode(&x.xor(e), &rv).ok().as_ref() != Some(&msg) {
                        failures += 1;
                    }
                }
                assert!(failures <= budget, "greedy failure {failures}/64 above eps");
                max_failures = max_failures.max(failures);
            }
        }
    }
    println!(
        "ACCEPTANCE C12 toy-random-code: PASS (max overlap {max_overlap} <= {budget}, max greedy failures {max_failures}/64)"
    );
}

/// Supporting invariant: at a fixed tight outer margin (beta ~ 0.078,
/// barely above the expected inner-failure fraction 15/256), the word
/// failure frequency decays as the block count doubles through
/// {32, 64, 128, 256}.
#[test]
fn concat_failure_decays_with_block_count() {
    let run = |blocks: usize, message_symbols: usize| {
        let s = spec(serde_json::json!({
            "code": {"scheme": "concat-memoryless", "inner_n": 16, "inner_t": 4,
                     "inner_epsilon": 0.0625, "message_symbols": message_symbols,
                     "blocks": blocks},
            "channel": {"scenario": "memoryless-blocks",
                        "noise": {"kind": "random-subset", "n": 16, "size": 16, "seed": 99},
                        "blocks": blocks},
            "message_policy": "random",
            "message_count": 8,
            "trials": 400,
            "epsilon_target": 0.5
        }));
        run_experiment(&s).unwrap().failure_rate
    };
    let sweep = [run(32, 27), run(64, 54), run(128, 108), run(256, 216)];
    assert!(
        sweep.windows(2).all(|w| w[0] >= w[1]),
        "not monotone: {sweep:?}"
    );
    assert!(
        sweep[0] > 0.05 && sweep[3] < sweep[0] / 2.0,
        "no visible decay: {sweep:?}"
    );
    println!("SUPPORT concat-decay: PASS (tight-margin failure sweep {sweep:?})");
}
