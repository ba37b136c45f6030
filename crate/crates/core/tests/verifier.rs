use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schedseq::constructor::{build_schedule_set, BuildOptions, ScheduleSequenceSet};
use schedseq::seqcore::{BinarySequence, Channel, GroupDivision, OffsetVector, ScheduleSequence, Symbol};
use schedseq::verifier::{
    appendix_f, b_sequence, blocking_run, check_pair_conservative, check_pair_exhaustive, pair_succeeds,
    undelivered_pair, verify_set, Mode, RecursionForm, Verdict, DEFAULT_BUDGET,
};

fn parse(s: &str) -> Vec<Symbol> {
    s.split_whitespace().map(|x| x.parse().unwrap()).collect()
}

fn seq(s: &str, group: usize) -> ScheduleSequence {
    ScheduleSequence::new(parse(s), Channel::from_index(group)).unwrap()
}

fn worked_example() -> ScheduleSequenceSet {
    let s1 = seq("T1 T1 T1 T1 T1 T1 R1 R1 R1 R2 R2 R2", 0);
    let s2 = seq(&"T1 R1 T1 R2 ".repeat(3), 0);
    let s3 = seq(&"T2 R1 R1 ".repeat(4), 1);
    ScheduleSequenceSet::new(vec![s1, s2, s3], GroupDivision::new(vec![0, 0, 1], 2).unwrap(), 2).unwrap()
}

fn exhaustive() -> Mode {
    Mode::Exhaustive { budget: DEFAULT_BUDGET }
}

/// Random set with transmit symbols only on each node's own channel.
fn random_set(rng: &mut ChaCha8Rng, nodes: usize, groups: usize, period: usize) -> ScheduleSequenceSet {
    let mut assignment: Vec<usize> = (0..nodes).map(|i| i % groups).collect();
    for i in (1..nodes).rev() {
        assignment.swap(i, rng.gen_range(0..=i));
    }
    let division = GroupDivision::new(assignment.clone(), groups).unwrap();
    let sequences = assignment
        .iter()
        .map(|&g| {
            let symbols = (0..period)
                .map(|_| {
                    if rng.gen_bool(0.35) {
                        Symbol::Transmit(Channel::from_index(g))
                    } else {
                        Symbol::Receive(Channel::from_index(rng.gen_range(0..groups)))
                    }
                })
                .collect();
            ScheduleSequence::new(symbols, Channel::from_index(g)).unwrap()
        })
        .collect();
    ScheduleSequenceSet::new(sequences, division, groups).unwrap()
}

/// Direct enumeration of every offset of `G_m ∪ {j}` with the transmitter at
/// 0, replaying the slot rule by hand.
fn brute_force_pair(set: &ScheduleSequenceSet, i: usize, j: usize) -> bool {
    let l = set.period();
    let m = set.channel_of(i);
    let mut nodes: Vec<usize> = (0..set.nodes()).filter(|&x| x != i && (x == j || set.channel_of(x) == m)).collect();
    nodes.sort();
    let total = l.pow(nodes.len() as u32);
    (0..total).all(|code| {
        let mut offsets = vec![0usize; set.nodes()];
        let mut c = code;
        for &n in &nodes {
            offsets[n] = c % l;
            c /= l;
        }
        (0..l).any(|t| {
            let at = |x: usize| set.sequence(x).at((t + offsets[x]) % l);
            at(i) == Symbol::Transmit(m)
                && at(j) == Symbol::Receive(m)
                && (0..set.nodes()).all(|x| x == i || x == j || set.channel_of(x) != m || at(x) != Symbol::Transmit(m))
        })
    })
}

#[test]
fn worked_example_is_proven() {
    let set = worked_example();
    let report = verify_set(&set, exhaustive());
    assert_eq!(report.verdict, Verdict::Proven);
    assert_eq!(report.pairs_checked, 6);
    for i in 0..3 {
        for j in (0..3).filter(|&j| j != i) {
            assert!(brute_force_pair(&set, i, j));
        }
    }
}

#[test]
fn deaf_receiver_yields_replayable_witness() {
    let set = worked_example().replace(2, seq(&"T2 ".repeat(12), 1)).unwrap();
    let report = check_pair_exhaustive(&set, 0, 2, DEFAULT_BUDGET);
    assert_eq!(report.verdict, Verdict::FailedWithWitness);
    let w = report.witness.unwrap();
    assert_eq!((w.transmitter, w.receiver), (0, 2));
    let offsets = w.offset_vector(3, 12);
    assert!(!pair_succeeds(&set, 0, 2, &offsets));
    assert!(undelivered_pair(&set, &offsets).is_some());

    let whole = verify_set(&set, exhaustive());
    assert_eq!(whole.verdict, Verdict::FailedWithWitness);
    let w = whole.witness.unwrap();
    assert!(!pair_succeeds(&set, w.transmitter, w.receiver, &w.offset_vector(3, 12)));

    let sampled = verify_set(&set, Mode::Randomized { samples: 50, seed: 1 });
    assert_eq!(sampled.verdict, Verdict::FailedWithWitness);
}

#[test]
fn constructed_small_sets_are_proven() {
    let four = build_schedule_set(4, 2, BuildOptions { employed: Some(2), selection_seed: None }).unwrap();
    assert_eq!(four.period(), 60);
    assert_eq!(verify_set(&four, exhaustive()).verdict, Verdict::Proven);
    assert_eq!(verify_set(&four, Mode::Conservative).verdict, Verdict::ProvenConservative);

    let three = build_schedule_set(3, 2, BuildOptions::default()).unwrap();
    assert_eq!(verify_set(&three, exhaustive()).verdict, Verdict::Proven);

    for k in 2..=5 {
        let single = build_schedule_set(k, 1, BuildOptions::default()).unwrap();
        assert_eq!(single.employed(), 1);
        assert_eq!(verify_set(&single, exhaustive()).verdict, Verdict::Proven, "K = {k}");
    }
}

#[test]
fn shuffled_selection_stays_valid() {
    for seed in 0..4 {
        let set = build_schedule_set(5, 2, BuildOptions { employed: Some(2), selection_seed: Some(seed) }).unwrap();
        assert_eq!(verify_set(&set, exhaustive()).verdict, Verdict::Proven, "seed {seed}");
    }
}

#[test]
fn sampling_finds_no_failure_in_a_constructed_set() {
    let set = build_schedule_set(10, 2, BuildOptions::default()).unwrap();
    let report = verify_set(&set, Mode::Randomized { samples: 3000, seed: 8 });
    assert_eq!(report.verdict, Verdict::Unknown);
    assert!(report.witness.is_none());
}

#[test]
fn pruned_search_matches_full_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut failures = 0;
    for _ in 0..60 {
        let k = rng.gen_range(3..=4);
        let w = rng.gen_range(1..=2);
        let l = rng.gen_range(5..=9);
        let set = random_set(&mut rng, k, w, l);
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                let ok = brute_force_pair(&set, i, j);
                let report = check_pair_exhaustive(&set, i, j, DEFAULT_BUDGET);
                assert_eq!(report.verdict == Verdict::Proven, ok);
                if !ok {
                    failures += 1;
                    let w = report.witness.unwrap();
                    assert!(!pair_succeeds(&set, i, j, &w.offset_vector(k, l)));
                }
            }
        }
    }
    assert!(failures > 0, "sampler never produced a failing pair");
}

#[test]
fn conservative_implies_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut proven = 0;
    for _ in 0..80 {
        let k = rng.gen_range(3..=4);
        let w = rng.gen_range(1..=2);
        let l = rng.gen_range(6..=12);
        let set = random_set(&mut rng, k, w, l);
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                if check_pair_conservative(&set, i, j).is_proven() {
                    proven += 1;
                    assert_eq!(check_pair_exhaustive(&set, i, j, DEFAULT_BUDGET).verdict, Verdict::Proven);
                }
            }
        }
    }
    assert!(proven > 0);
}

#[test]
fn budget_exhaustion_is_unknown() {
    let set = build_schedule_set(4, 2, BuildOptions { employed: Some(2), selection_seed: None }).unwrap();
    let report = check_pair_exhaustive(&set, 0, 2, 1);
    assert_eq!(report.verdict, Verdict::Unknown);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_survives_rotating_every_sequence(seed in any::<u64>(), shifts in prop::collection::vec(0usize..16, 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = random_set(&mut rng, 3, 2, 7);
        let mut shifted = set.clone();
        for node in 0..3 {
            let s = set.sequence(node).shifted(shifts[node] % 7).unwrap();
            shifted = shifted.replace(node, s).unwrap();
        }
        let a = verify_set(&set, exhaustive()).verdict;
        let b = verify_set(&shifted, exhaustive()).verdict;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lemma_three_bound(c in 1i64..40, extra in 0i64..40, mu in 1.0f64..6.0, l in 1u64..3000) {
        let b1 = c + extra;
        let b = b_sequence(b1, RecursionForm::Direct { mu }, l, c as usize);
        if b.iter().all(|&x| x >= 1) {
            let bound = (8.0 * (c * c) as f64 * mu / 9.0).ceil() as u64;
            prop_assert!(l >= bound, "C = {}, b1 = {}, mu = {}, L = {}", c, b1, mu, l);
        }
    }
}

#[test]
fn lemma_three_bound_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut active = 0;
    for _ in 0..10_000 {
        let c = rng.gen_range(1..60i64);
        let b1 = c + rng.gen_range(0..60);
        let mu = rng.gen_range(1.0..8.0);
        let l = rng.gen_range(1..20_000u64);
        let b = b_sequence(b1, RecursionForm::Direct { mu }, l, c as usize);
        if b.iter().all(|&x| x >= 1) {
            active += 1;
            assert!(l as f64 >= (8.0 * (c * c) as f64 * mu / 9.0).ceil());
        }
    }
    assert!(active > 1000);
}

#[test]
fn blocking_stays_below_comparison_sequence() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let ones = |rng: &mut ChaCha8Rng, l: usize, weight: usize| {
        let mut pos: Vec<usize> = (0..l).collect();
        for i in (1..l).rev() {
            pos.swap(i, rng.gen_range(0..=i));
        }
        BinarySequence::from_positions(l, pos[..weight].to_vec()).unwrap()
    };
    for _ in 0..1000 {
        let l = rng.gen_range(8..60);
        let w = rng.gen_range(1..=4usize);
        let k = rng.gen_range(2..=6usize);
        let a1 = rng.gen_range(1..l);
        let e1 = ones(&mut rng, l, a1);
        let w2_min = l - l / w;
        let w2 = rng.gen_range(w2_min..=l);
        let mut comps = vec![ones(&mut rng, l, w2)];
        for _ in 3..=k {
            let wj = rng.gen_range(a1..=l);
            comps.push(ones(&mut rng, l, wj));
        }
        let trace = blocking_run(&e1, &comps).unwrap();
        for j in 1..trace.a.len() {
            let prev = trace.a[j - 1];
            let drop = (prev * trace.weights[j - 1]).div_ceil(l);
            assert!(trace.a[j] <= prev - drop.min(prev));
        }
        let b2 = a1.div_ceil(w) as i64;
        // Slightly below a1 / (b2 W) so float rounding cannot push b2 W eps past a1.
        let eps = a1 as f64 / (b2 as f64 * w as f64) * (1.0 - 1e-12);
        let b = b_sequence(b2, RecursionForm::Comparison { employed: w, epsilon: eps }, l as u64, k - 1);
        for (idx, &bj) in b.iter().enumerate() {
            assert!(trace.a[idx + 1] as i64 <= bj, "a = {:?}, b = {:?}", trace.a, b);
        }
    }
}

#[test]
fn appendix_function_peaks_at_root_two() {
    let (mut best_x, mut best) = (0.0, f64::NEG_INFINITY);
    for n in 1..=600_000 {
        let x = n as f64 * 1e-5;
        let v = appendix_f(x).unwrap();
        if v > best {
            best = v;
            best_x = x;
        }
    }
    assert!((best_x - 2f64.sqrt()).abs() < 1e-3);
    assert!((best - 3.0 / 8f64.sqrt()).abs() < 1e-6);
}

#[test]
fn offsets_outside_the_period_are_rejected() {
    assert!(OffsetVector::new(vec![0, 12], 12).is_err());
}
