//! End-to-end acceptance checks, one test per shipped guarantee. Every test
//! prints a single PASS line (visible with `--nocapture`) carrying the
//! measured numbers, and pins the thresholds in the assertions themselves.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cooling_codes::bits::{subsets_of_range, Combinations};
use cooling_codes::cpecc::build_cpecc;
use cooling_codes::domination::{
    lpc_from_cooling, product, synthesize_auto, synthesize_mapping, verify_mapping,
    DominationGraph,
};
use cooling_codes::mds::build_rs_cpc;
use cooling_codes::model::{
    bounds, concatenation_sizes, min_distance, sunflower_size, verify_code, CodeKind, Codeword,
    HotSet, LpcCode, VerifyMode, VerifyOptions,
};
use cooling_codes::recursive::{build_lpc_union, build_recursive, build_trivial_inner};
use cooling_codes::sim::{simulate_code, HotSetPolicy, SimConfig};
use cooling_codes::spread::{build_construction4, build_spread_cooling};

fn pass(name: &str, detail: String) {
    println!("[PASS] {name}: {detail}");
}

/// Grid construction exactness at headline scale: q=16, w=6 gives the
/// (96, 15, 6) constant-power code with 2^20 codesets, built as a descriptor
/// in under a second.
#[test]
fn rs_construction_headline_exactness() {
    let start = Instant::now();
    let code = build_rs_cpc(16, 6).unwrap().into_code().unwrap();
    let elapsed = start.elapsed();
    assert_eq!((code.n, code.t, code.w), (96, 15, 6));
    assert_eq!(code.kind, CodeKind::Cpc);
    assert_eq!(code.num_codesets(), 1_048_576);
    assert!(elapsed.as_secs_f64() < 1.0, "construction took {elapsed:?}");
    pass(
        "rs construction headline exactness",
        format!("(96,15,6)-CPC, M=1048576=16^5, built in {elapsed:?}"),
    );
}

/// Desk-scale exhaustive verification: the (12, 3, 3) code passes every
/// check, with 16 codesets that are parallel classes of 4 weight-3 words,
/// against all 220 hot sets, in under a second.
#[test]
fn desk_scale_exhaustive_verification() {
    let start = Instant::now();
    let code = build_rs_cpc(4, 3).unwrap().into_code().unwrap();
    assert_eq!(code.num_codesets(), 16);
    for i in 0..16u128 {
        let cs = code.codeset(i).unwrap();
        assert_eq!(cs.len(), 4);
        let mut covered = HashSet::new();
        for cw in &cs.codewords {
            assert_eq!(cw.weight(), 3);
            assert!(cw.support().iter().all(|&w| covered.insert(w)));
        }
        assert_eq!(covered.len(), 12, "codeset {i} is not a parallel class");
    }
    let report = verify_code(&code, VerifyMode::Exhaustive, &VerifyOptions::default()).unwrap();
    let elapsed = start.elapsed();
    assert!(report.passed(), "{report:?}");
    match &report.cooling {
        cooling_codes::model::CheckResult::Pass { checked } => {
            assert_eq!(*checked, 220 * 16, "hot-set x codeset pairs")
        }
        other => panic!("cooling check failed: {other:?}"),
    }
    assert!(elapsed.as_secs_f64() < 1.0, "verification took {elapsed:?}");
    pass(
        "desk-scale exhaustive verification",
        format!("(12,3,3)-CPC, 220 hot sets x 16 parallel classes in {elapsed:?}"),
    );
}

/// Encode/decode round trips: exhaustively on (12, 3, 3) (16 labels x 220
/// hot sets, all avoiding and all decoding back), randomized on (96, 15, 6)
/// (10^4 trials), with the multiplication counters under 10n for encoding
/// and 10w^3 for decoding.
#[test]
fn encode_decode_round_trips() {
    let small = build_rs_cpc(4, 3).unwrap();
    let mut cases = 0u64;
    for index in 0..16u128 {
        let label = small.index_to_label(index).unwrap();
        for hot in subsets_of_range(12, 3) {
            let hot = HotSet::new(12, hot).unwrap();
            let word = small.encode(&label, &hot).unwrap();
            assert!(word.avoids(&hot));
            assert_eq!(small.decode(&word).unwrap(), label);
            cases += 1;
        }
    }
    assert_eq!(cases, 3520);

    let big = build_rs_cpc(16, 6).unwrap();
    let (n, w) = (big.n() as u64, big.w() as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut max_encode = 0u64;
    let mut max_decode = 0u64;
    for _ in 0..10_000 {
        let index = rng.gen_range(0..big.num_codesets());
        let label = big.index_to_label(index).unwrap();
        let hot = HotSet::new(
            big.n(),
            rand::seq::index::sample(&mut rng, big.n(), 15).into_vec(),
        )
        .unwrap();
        let before = big.field().mul_count();
        let word = big.encode(&label, &hot).unwrap();
        max_encode = max_encode.max(big.field().mul_count() - before);
        assert!(word.avoids(&hot));
        let before = big.field().mul_count();
        let decoded = big.decode(&word).unwrap();
        max_decode = max_decode.max(big.field().mul_count() - before);
        assert_eq!(decoded, label);
    }
    assert!(max_encode <= 10 * n, "encode used {max_encode} > 10n muls");
    assert!(
        max_decode <= 10 * w * w * w,
        "decode used {max_decode} > 10w^3 muls"
    );
    pass(
        "encode/decode round trips",
        format!(
            "3520/3520 exhaustive + 10000/10000 randomized; encode <= {max_encode} muls (cap {}), decode <= {max_decode} muls (cap {})",
            10 * n,
            10 * w * w * w
        ),
    );
}

/// Error correction: the (32, 7, 4, 1) code has brute-force minimum distance
/// at least 4 over all C(512, 2) codeword pairs, and the column-erasure
/// decoder recovers the message for all 512 x 32 single-bit corruptions, in
/// under a minute.
#[test]
fn cpecc_distance_and_single_bit_correction() {
    let start = Instant::now();
    let code = build_cpecc(8, 4, 1).unwrap();
    let lpc = code.clone().into_code().unwrap();
    let total_words: usize = (0..lpc.num_codesets())
        .map(|i| lpc.codeset(i).unwrap().len())
        .sum();
    assert_eq!(total_words, 512);
    let dist = min_distance(&lpc, 1_000_000).unwrap();
    assert!(dist >= 4, "minimum distance {dist} < 2e+2 = 4");

    let mut recovered = 0u64;
    for index in 0..code.num_codesets() {
        let label = code.index_to_label(index).unwrap();
        for cw in &code.codeset(&label).unwrap().codewords {
            for wire in 0..code.n() {
                let mut support = cw.support().to_vec();
                match support.iter().position(|&s| s == wire) {
                    Some(p) => {
                        support.remove(p);
                    }
                    None => support.push(wire),
                }
                let corrupted = Codeword::new(code.n(), support).unwrap();
                assert_eq!(code.decode(&corrupted).unwrap(), label, "flip {wire}");
                recovered += 1;
            }
        }
    }
    assert_eq!(recovered, 16_384);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    pass(
        "cpecc distance and single-bit correction",
        format!("(32,7,4,1): min distance {dist} >= 4, 16384/16384 corruptions recovered in {elapsed:?}"),
    );
}

/// The blow-up of the trivial (4, 2, 2) inner code at q=5 is a (20, 10, 2)
/// code of size exactly 5: codeset disjointness checked exhaustively,
/// cooling checked on all 1001 window hot sets plus 1000 random ones with
/// zero violations.
#[test]
fn recursive_blow_up_small_instance() {
    let inner = build_trivial_inner(4, 2).unwrap();
    let code = build_recursive(5, &inner).unwrap();
    assert_eq!((code.n(), code.t(), code.w()), (20, 10, 2));
    assert_eq!(code.num_codesets(), 5); // q^(w-1)

    let mut seen: std::collections::HashMap<Vec<usize>, u128> = std::collections::HashMap::new();
    let lpc = code.clone().into_code().unwrap();
    for i in 0..5u128 {
        for cw in lpc.codeset(i).unwrap().codewords {
            if let Some(prev) = seen.insert(cw.support().to_vec(), i) {
                panic!("codesets {prev} and {i} share {:?}", cw.support());
            }
        }
    }

    let mut checks = 0u64;
    let window: Vec<usize> = (0..14).collect();
    for hot in Combinations::new(&window, 10) {
        let hot = HotSet::new(20, hot).unwrap();
        for class in 0..5u128 {
            let word = code.encode(class, 0, &hot).unwrap();
            assert!(word.avoids(&hot), "violation at {:?}", hot.wires());
            checks += 1;
        }
    }
    assert_eq!(checks, 1001 * 5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let hot = HotSet::new(20, rand::seq::index::sample(&mut rng, 20, 10).into_vec()).unwrap();
        for class in 0..5u128 {
            let word = code.encode(class, 0, &hot).unwrap();
            assert!(word.avoids(&hot));
        }
    }
    pass(
        "recursive blow-up small instance",
        "(20,10,2)-CPC of size 5; disjointness exhaustive; 5005 window + 5000 random cooling checks, 0 violations".into(),
    );
}

/// Mapping pipeline at toy scale: the synthesized (2, 3, 1) leaf verifies on
/// all 4 inputs, its 2-fold product on all 16, and pushing the (4, 1) line
/// cooling code (size 5 = (2^4-1)/(2^2-1)) through the product gives a
/// (6, 1, 2) low-power code passing exhaustive verification on all 6 hot
/// singletons.
#[test]
fn domination_pipeline_small_lpc() {
    let graph = DominationGraph::new(vec![vec![0], vec![1, 2]]).unwrap();
    let leaf = synthesize_mapping(&graph, 1).unwrap();
    let leaf_report = verify_mapping(&leaf).unwrap();
    assert!(leaf_report.passed(), "{leaf_report:?}");
    assert_eq!(leaf_report.inputs_checked, 4);

    let pair = product(vec![leaf.clone(), leaf]).unwrap();
    assert_eq!((pair.m(), pair.n(), pair.w()), (4, 6, 2));
    let pair_report = verify_mapping(&pair).unwrap();
    assert!(pair_report.passed(), "{pair_report:?}");
    assert_eq!(pair_report.inputs_checked, 8); // factor-wise, no expansion
    // and the expanded product table over all 16 inputs: injective, weight
    // bounded, and every lit wire's owner switched on
    let mut images = HashSet::new();
    for x in 0..16u64 {
        let input = cooling_codes::bits::BitWord::from_u64(4, x);
        let image = pair.apply(&input).unwrap();
        assert!(images.insert(image.support()), "duplicate image for {x}");
        assert!(image.count_ones() <= 2);
        for wire in image.support() {
            let owner = pair.owners(&[wire]).unwrap()[0];
            assert_eq!(x >> owner & 1, 1, "input {x} lights unowned wire {wire}");
        }
        assert_eq!(pair.invert(&image).unwrap(), Some(input));
    }

    let cooling = build_spread_cooling(4, 1).unwrap();
    assert_eq!(cooling.num_codesets(), 5);
    let lpc = lpc_from_cooling(cooling, pair).unwrap();
    assert_eq!((lpc.n, lpc.t, lpc.w), (6, 1, 2));
    assert_eq!(lpc.num_codesets(), 5);
    let report = verify_code(&lpc, VerifyMode::Exhaustive, &VerifyOptions::default()).unwrap();
    assert!(report.passed(), "{report:?}");
    match &report.cooling {
        cooling_codes::model::CheckResult::Pass { checked } => assert_eq!(*checked, 6 * 5),
        other => panic!("cooling check failed: {other:?}"),
    }
    pass(
        "domination pipeline small lpc",
        "(2,3,1) leaf and (4,6,2) product verified; (6,1,2)-LPC of size 5 passes all 6 hot singletons".into(),
    );
}

/// Mapping synthesis at the published scale: the matching engine returns a
/// valid (9, 15, 3) mapping for a candidate partition (balanced first), and
/// its 512-input verification of injectivity, weight and domination passes.
/// Infeasible partitions report Hall witnesses and fall through the
/// candidate list before failing.
#[test]
fn domination_synthesis_9_15_3() {
    let (mapping, partition) = synthesize_auto(9, 15, 3).unwrap();
    let report = verify_mapping(&mapping).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.inputs_checked, 512);

    // the witness/fallback path: a partition that cannot work reports a
    // Hall violator rather than synthesizing garbage
    let graph = DominationGraph::new(vec![vec![0], vec![1]]).unwrap();
    match synthesize_mapping(&graph, 0) {
        Err(cooling_codes::Error::MappingInfeasible { witness }) => {
            assert!(witness.inputs.len() > witness.image_count);
        }
        other => panic!("expected a Hall witness, got {other:?}"),
    }
    pass(
        "domination synthesis (9,15,3)",
        format!("valid mapping on partition {partition:?}; 512-input verification passed"),
    );
}

/// Every constructed code stays within its applicable size bounds, and the
/// spot values match: bounds(12,3,3) gives 84 and 70, the concatenation
/// formula reproduces 2^20 on the (96,1,6) parameters, the sunflower
/// formula gives 2^16 for (96,15,6) at s=81, r=65 but is inapplicable at
/// s=137, and gives 2^17 for (160,48,6).
#[test]
fn bounds_consistency_and_comparisons() {
    let b = bounds(12, 3, 3).unwrap();
    assert_eq!(b.cpc_count_bound, BigUint::from(84u32));
    assert_eq!(b.cpc_turan_bound, BigUint::from(70u32));

    let roster: Vec<(&str, LpcCode)> = vec![
        ("(4,1,2) grid", build_rs_cpc(2, 2).unwrap().into_code().unwrap()),
        ("(12,3,3) grid", build_rs_cpc(4, 3).unwrap().into_code().unwrap()),
        ("(96,15,6) grid", build_rs_cpc(16, 6).unwrap().into_code().unwrap()),
        ("(15,4,3,1) ecc", build_cpecc(5, 3, 1).unwrap().into_code().unwrap()),
        ("(32,7,4,1) ecc", build_cpecc(8, 4, 1).unwrap().into_code().unwrap()),
        (
            "(20,10,2) blow-up",
            build_recursive(5, &build_trivial_inner(4, 2).unwrap())
                .unwrap()
                .into_code()
                .unwrap(),
        ),
        ("(20,10,2) union", build_lpc_union(4, 2, 2, 5).unwrap()),
        ("(144,32,7) union", build_lpc_union(9, 2, 7, 16).unwrap()),
        (
            "(6,1,2) mapped",
            {
                let graph = DominationGraph::new(vec![vec![0], vec![1, 2]]).unwrap();
                let leaf = synthesize_mapping(&graph, 1).unwrap();
                lpc_from_cooling(
                    build_spread_cooling(4, 1).unwrap(),
                    product(vec![leaf.clone(), leaf]).unwrap(),
                )
                .unwrap()
            },
        ),
        ("(35,2,7) pipeline", build_construction4(7, 2, 1, 1).unwrap()),
    ];
    for (name, code) in &roster {
        let b = bounds(code.n, code.t, code.w).unwrap();
        let size = BigUint::from(code.num_codesets());
        match code.kind {
            CodeKind::Cpc | CodeKind::Cpecc { .. } => {
                assert!(size <= b.cpc_count_bound, "{name}: size over counting bound");
                assert!(size <= b.cpc_turan_bound, "{name}: size over Turan bound");
            }
            CodeKind::Lpc => {
                assert!(size <= b.lpc_count_bound, "{name}: size over counting bound");
                assert!(size <= b.lpc_turan_bound, "{name}: size over Turan bound");
            }
            CodeKind::Cooling => unreachable!("no plain cooling codes in the roster"),
        }
    }

    let concat = concatenation_sizes(6, 16, 1, 16, 1);
    assert_eq!((concat.n, concat.t, concat.w), (96, 1, 6));
    assert_eq!(
        concat.up_to_q_plus_1_variant.size().unwrap(),
        &BigUint::from(1u32 << 20)
    );
    let sun = sunflower_size(96, 15, 6, 81, 65);
    assert_eq!(sun.result.size().unwrap(), &BigUint::from(1u32 << 16));
    let inapplicable = sunflower_size(96, 15, 6, 137, 95);
    assert!(inapplicable.result.size().is_none());
    let sun160 = sunflower_size(160, 48, 6, 137, 95);
    assert_eq!(sun160.result.size().unwrap(), &BigUint::from(1u32 << 17));

    pass(
        "bounds consistency and comparisons",
        format!(
            "{} codes within bounds; spot values 84/70, 2^20, 2^16, n/a, 2^17 all match",
            roster.len()
        ),
    );
}

/// Simulator invariants: 10^4 steps of the (12, 3, 3) code under the
/// hottest-wires policy never touch a declared-hot wire and always flip
/// exactly 3 wires; the (32, 7, 4, 1) code under one injected bit flip per
/// step still decodes every message.
#[test]
fn simulator_invariants() {
    let code = build_rs_cpc(4, 3).unwrap().into_code().unwrap();
    let config = SimConfig {
        code: String::new(),
        steps: 10_000,
        policy: HotSetPolicy::TopT,
        seed: 7,
        decay: 0.9,
        flips_per_step: 0,
    };
    let report = simulate_code(&code, &config).unwrap();
    assert_eq!(report.hot_wire_violations, 0);
    assert_eq!(report.max_step_weight, 3);
    assert_eq!(report.min_step_weight, 3);
    assert_eq!(report.decode_success_rate, 1.0);

    let ecc = build_cpecc(8, 4, 1).unwrap().into_code().unwrap();
    let config = SimConfig {
        code: String::new(),
        steps: 10_000,
        policy: HotSetPolicy::TopT,
        seed: 8,
        decay: 0.9,
        flips_per_step: 1,
    };
    let ecc_report = simulate_code(&ecc, &config).unwrap();
    assert_eq!(ecc_report.decode_success_rate, 1.0);
    assert_eq!(ecc_report.hot_wire_violations, 0);

    pass(
        "simulator invariants",
        format!(
            "(12,3,3): 0 violations, weight 3, success 1.0; (32,7,4,1)+1 flip/step: success {}",
            ecc_report.decode_success_rate
        ),
    );
}

/// Line-partition cooling codes: (4, 1) and (6, 2) pass the exhaustive
/// avoidance check over all hot sets and all codesets, with sizes 5 and 9
/// matching (2^n - 1) / (2^(t+1) - 1).
#[test]
fn spread_cooling_codes() {
    for (n, t, expected_m) in [(4usize, 1usize, 5u128), (6, 2, 9)] {
        let code = build_spread_cooling(n, t).unwrap();
        assert_eq!(code.num_codesets(), expected_m);
        let as_code = code.into_code().unwrap();
        let report =
            verify_code(&as_code, VerifyMode::Exhaustive, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "({n},{t}): {report:?}");
        match &report.cooling {
            cooling_codes::model::CheckResult::Pass { checked } => {
                let hot_sets = binomial_u128(n, t);
                assert_eq!(*checked, hot_sets * expected_m);
            }
            other => panic!("cooling check failed: {other:?}"),
        }
    }
    pass(
        "spread cooling codes",
        "(4,1) size 5 and (6,2) size 9 pass all hot sets x all codesets".into(),
    );
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
