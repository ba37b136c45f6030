use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructor::ScheduleSequenceSet;
use crate::seqcore::{Channel, OffsetVector, Symbol};

use super::bits::{all_shifts, Bits};
use super::report::{Method, Verdict, VerificationReport, Witness};

/// Default per-pair budget, in offset combinations evaluated.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive { budget: u64 },
    Conservative,
    Randomized { samples: u64, seed: u64 },
}

fn positions(set: &ScheduleSequenceSet, node: usize, sym: Symbol) -> Vec<usize> {
    let s = set.sequence(node);
    (0..s.len()).filter(|&t| s.at(t) == sym).collect()
}

/// Whether `i` delivers to `j` at least once per period under `offsets`.
pub fn pair_succeeds(set: &ScheduleSequenceSet, i: usize, j: usize, offsets: &OffsetVector) -> bool {
    let l = set.period();
    let m = set.channel_of(i);
    let colliders: Vec<usize> = set
        .division()
        .members(m.index())
        .filter(|&x| x != i && x != j)
        .collect();
    (0..l).any(|t| {
        let at = |node: usize| set.sequence(node).at((t + offsets.get(node)) % l);
        at(i) == Symbol::Transmit(m)
            && at(j) == Symbol::Receive(m)
            && colliders.iter().all(|&x| at(x) != Symbol::Transmit(m))
    })
}

/// Plays one period under `offsets` and returns the first ordered pair that
/// never got a collision-free delivery.
pub fn undelivered_pair(set: &ScheduleSequenceSet, offsets: &OffsetVector) -> Option<(usize, usize)> {
    let k = set.nodes();
    let l = set.period();
    let w = set.employed();
    let mut delivered = vec![false; k * k];
    let mut tx_count = vec![0u32; w];
    let mut tx_node = vec![0usize; w];
    for t in 0..l {
        tx_count.iter_mut().for_each(|c| *c = 0);
        for node in 0..k {
            if let Symbol::Transmit(c) = set.sequence(node).at((t + offsets.get(node)) % l) {
                tx_count[c.index()] += 1;
                tx_node[c.index()] = node;
            }
        }
        for node in 0..k {
            if let Symbol::Receive(c) = set.sequence(node).at((t + offsets.get(node)) % l) {
                if tx_count[c.index()] == 1 {
                    delivered[tx_node[c.index()] * k + node] = true;
                }
            }
        }
    }
    (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && !delivered[i * k + j])
}

struct PairSetup {
    channel: Channel,
    tx_i: Bits,
    rx_j: Vec<Bits>,
    colliders: Vec<usize>,
}

fn setup(set: &ScheduleSequenceSet, i: usize, j: usize) -> PairSetup {
    let l = set.period();
    let m = set.channel_of(i);
    let mut tx_i = Bits::zeros(l);
    for p in positions(set, i, Symbol::Transmit(m)) {
        tx_i.set(p);
    }
    let rx_j = all_shifts(&positions(set, j, Symbol::Receive(m)), l);
    let colliders = set.division().members(m.index()).filter(|&x| x != i && x != j).collect();
    PairSetup { channel: m, tx_i, rx_j, colliders }
}

/// Largest number of ones of `a` any single shift of `tx` can cover.
fn max_cover(a: &Bits, tx: &[Bits]) -> usize {
    tx.iter().map(|s| a.and_count(s)).max().unwrap_or(0)
}

enum Branch {
    Safe,
    Fail(Vec<usize>),
    OverBudget,
}

struct Search<'a> {
    collider_shifts: &'a [Vec<Bits>],
    counter: &'a AtomicU64,
    budget: u64,
}

impl Search<'_> {
    // `chosen` holds the collider offsets fixed so far.
    fn descend(&self, a: &Bits, chosen: &mut Vec<usize>) -> Branch {
        if self.counter.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Branch::OverBudget;
        }
        if !a.any() {
            let mut offsets = chosen.clone();
            offsets.resize(self.collider_shifts.len(), 0);
            return Branch::Fail(offsets);
        }
        let depth = chosen.len();
        if depth == self.collider_shifts.len() {
            return Branch::Safe;
        }
        // Remaining colliders cannot blank every surviving slot.
        let cover: usize = self.collider_shifts[depth..].iter().map(|s| max_cover(a, s)).sum();
        if a.count() > cover {
            return Branch::Safe;
        }
        for (tau, shifted) in self.collider_shifts[depth].iter().enumerate() {
            chosen.push(tau);
            let r = self.descend(&a.and_not(shifted), chosen);
            chosen.pop();
            if !matches!(r, Branch::Safe) {
                return r;
            }
        }
        Branch::Safe
    }
}

/// Enumerates the offsets of the transmitter's group and the receiver with
/// the transmitter pinned at 0. Subtrees in which the remaining colliders
/// provably cannot block every surviving slot are skipped, so a failing
/// combination is always found when one exists.
pub fn check_pair_exhaustive(set: &ScheduleSequenceSet, i: usize, j: usize, budget: u64) -> VerificationReport {
    assert!(i != j, "transmitter and receiver must differ");
    let l = set.period();
    let ctx = setup(set, i, j);
    let collider_shifts: Vec<Vec<Bits>> = ctx
        .colliders
        .iter()
        .map(|&x| all_shifts(&positions(set, x, Symbol::Transmit(ctx.channel)), l))
        .collect();
    let counter = AtomicU64::new(0);
    let search = Search { collider_shifts: &collider_shifts, counter: &counter, budget };

    let outcomes: Vec<Branch> = (0..l)
        .into_par_iter()
        .map(|tau_j| search.descend(&ctx.tx_i.and(&ctx.rx_j[tau_j]), &mut Vec::new()))
        .collect();

    let evaluations = counter.load(Ordering::Relaxed).min(budget);
    let mut over_budget = false;
    for (tau_j, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Branch::Safe => {}
            Branch::OverBudget => over_budget = true,
            Branch::Fail(coll) => {
                let mut offsets = vec![(i, 0), (j, tau_j)];
                offsets.extend(ctx.colliders.iter().copied().zip(coll));
                return VerificationReport {
                    verdict: Verdict::FailedWithWitness,
                    witness: Some(Witness { transmitter: i, receiver: j, offsets }),
                    pairs_checked: 1,
                    method: Method::Exhaustive,
                    evaluations,
                };
            }
        }
    }
    VerificationReport {
        verdict: if over_budget { Verdict::Unknown } else { Verdict::Proven },
        witness: None,
        pairs_checked: 1,
        method: Method::Exhaustive,
        evaluations,
    }
}

/// Polynomial-time sufficient check: for every receiver offset, the matched
/// slots must outnumber what the other group members can blank out, each
/// taking its individually worst shift. Never reports a failure.
pub fn check_pair_conservative(set: &ScheduleSequenceSet, i: usize, j: usize) -> VerificationReport {
    assert!(i != j, "transmitter and receiver must differ");
    let l = set.period();
    let ctx = setup(set, i, j);
    let collider_tx: Vec<Vec<usize>> = ctx
        .colliders
        .iter()
        .map(|&x| positions(set, x, Symbol::Transmit(ctx.channel)))
        .collect();

    let proven = (0..l).into_par_iter().all(|tau_j| {
        let matched: Vec<usize> = ctx.tx_i.and(&ctx.rx_j[tau_j]).ones().collect();
        let mut hist = vec![0u32; l];
        let mut blocked = 0usize;
        for tx in &collider_tx {
            let mut best = 0u32;
            for &t in &matched {
                for &pos in tx {
                    // Collider offset that lines its transmit slot `pos` up with `t`.
                    let tau_x = (pos + l - t) % l;
                    hist[tau_x] += 1;
                    best = best.max(hist[tau_x]);
                }
            }
            for &t in &matched {
                for &pos in tx {
                    hist[(pos + l - t) % l] = 0;
                }
            }
            blocked += best as usize;
        }
        matched.len() > blocked
    });

    VerificationReport {
        verdict: if proven { Verdict::ProvenConservative } else { Verdict::Unknown },
        witness: None,
        pairs_checked: 1,
        method: Method::Conservative,
        evaluations: l as u64,
    }
}

fn ordered_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect()
}

/// Runs the chosen check over every ordered pair. Randomized mode samples
/// whole offset vectors and can only return a witness or `Unknown`.
pub fn verify_set(set: &ScheduleSequenceSet, mode: Mode) -> VerificationReport {
    match mode {
        Mode::Randomized { samples, seed } => randomized(set, samples, seed),
        Mode::Exhaustive { budget } => aggregate(set, Method::Exhaustive, |i, j| {
            check_pair_exhaustive(set, i, j, budget)
        }),
        Mode::Conservative => aggregate(set, Method::Conservative, |i, j| check_pair_conservative(set, i, j)),
    }
}

fn aggregate<F>(set: &ScheduleSequenceSet, method: Method, check: F) -> VerificationReport
where
    F: Fn(usize, usize) -> VerificationReport + Sync,
{
    let pairs = ordered_pairs(set.nodes());
    let reports: Vec<VerificationReport> = pairs.par_iter().map(|&(i, j)| check(i, j)).collect();
    let evaluations = reports.iter().map(|r| r.evaluations).sum();
    let pairs_checked = reports.len();
    if let Some(fail) = reports.iter().find(|r| r.verdict == Verdict::FailedWithWitness) {
        return VerificationReport { pairs_checked, evaluations, ..fail.clone() };
    }
    let verdict = if reports.iter().all(|r| r.is_proven()) {
        match method {
            Method::Exhaustive => Verdict::Proven,
            _ => Verdict::ProvenConservative,
        }
    } else {
        Verdict::Unknown
    };
    VerificationReport { verdict, witness: None, pairs_checked, method, evaluations }
}

fn randomized(set: &ScheduleSequenceSet, samples: u64, seed: u64) -> VerificationReport {
    let k = set.nodes();
    let l = set.period();
    let found = (0..samples).into_par_iter().find_map_first(|s| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(s);
        let offsets = OffsetVector::new((0..k).map(|_| rng.gen_range(0..l)).collect(), l).expect("in range");
        undelivered_pair(set, &offsets).map(|(i, j)| (s, i, j, offsets))
    });
    match found {
        Some((s, i, j, offsets)) => {
            let m = set.channel_of(i).index();
            let mut nodes: Vec<usize> = set.division().members(m).collect();
            if !nodes.contains(&j) {
                nodes.push(j);
            }
            VerificationReport {
                verdict: Verdict::FailedWithWitness,
                witness: Some(Witness {
                    transmitter: i,
                    receiver: j,
                    offsets: nodes.into_iter().map(|n| (n, offsets.get(n))).collect(),
                }),
                pairs_checked: k * (k - 1),
                method: Method::Randomized,
                evaluations: s + 1,
            }
        }
        None => VerificationReport {
            verdict: Verdict::Unknown,
            witness: None,
            pairs_checked: k * (k - 1),
            method: Method::Randomized,
            evaluations: samples,
        },
    }
}
