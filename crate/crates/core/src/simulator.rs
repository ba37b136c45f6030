//! Slot-synchronous Monte-Carlo simulation of the collision channel model.
//!
//! Each slot every node either transmits or listens on one channel. A channel
//! with exactly one transmitter delivers that packet to every node listening
//! on it; two or more transmitters collide and nobody hears anything. A run
//! ends once every ordered pair of nodes has had a delivery.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructor::ScheduleSequenceSet;
use crate::error::{Error, Result};
use crate::random_schemes::{
    frame_length, optimize_random, AssignTRandomParams, CouponModel, GeneralRandomParams, Scheme,
};
use crate::seqcore::{Channel, GroupDivision, OffsetVector, Symbol};

/// Completion probability used to size the default slot cap for random schemes.
const RANDOM_FRAME_TARGET: f64 = 0.99999;
/// Default cap, as a multiple of the period or the random frame length.
const CAP_FACTOR: u64 = 20;

#[derive(Debug, Clone)]
pub enum SimScheme {
    Sequence(Arc<ScheduleSequenceSet>),
    AssignTRandom { params: AssignTRandomParams, division: GroupDivision },
    GeneralRandom(GeneralRandomParams),
}

impl SimScheme {
    /// Assignment-T random access at its optimal transmit probability, with
    /// nodes spread evenly over the W channels.
    pub fn assign_t_optimal(employed: usize, nodes: usize) -> Result<Self> {
        if employed == 0 || nodes < 2 || employed > nodes {
            return Err(Error::InvalidParams(format!("need 1 <= W <= K and K >= 2, got W = {employed}, K = {nodes}")));
        }
        let p = optimize_random(employed, nodes, Scheme::AssignT).p;
        Ok(Self::AssignTRandom {
            params: AssignTRandomParams::balanced(employed, nodes, p)?,
            division: GroupDivision::even(nodes, employed)?,
        })
    }

    pub fn general_optimal(employed: usize, nodes: usize) -> Result<Self> {
        if employed == 0 || nodes < 2 {
            return Err(Error::InvalidParams(format!("need W >= 1 and K >= 2, got W = {employed}, K = {nodes}")));
        }
        let p = optimize_random(employed, nodes, Scheme::General).p;
        Ok(Self::GeneralRandom(GeneralRandomParams::new(employed, nodes, p)?))
    }

    pub fn nodes(&self) -> usize {
        match self {
            Self::Sequence(set) => set.nodes(),
            Self::AssignTRandom { params, .. } => params.nodes,
            Self::GeneralRandom(params) => params.nodes,
        }
    }

    pub fn employed(&self) -> usize {
        match self {
            Self::Sequence(set) => set.employed(),
            Self::AssignTRandom { params, .. } => params.employed,
            Self::GeneralRandom(params) => params.employed,
        }
    }

    /// Probability that a given ordered pair succeeds in one slot.
    fn pair_success(&self) -> Option<f64> {
        match self {
            Self::Sequence(_) => None,
            Self::AssignTRandom { params, .. } => Some(params.success()),
            Self::GeneralRandom(params) => Some(params.success()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OffsetMode {
    UniformRandom,
    Fixed(OffsetVector),
    AllZero,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub scheme: SimScheme,
    pub runs: usize,
    pub seed: u64,
    /// Slot cap per run; `None` picks 20 periods (sequences) or 20 random
    /// frame lengths.
    pub max_slots: Option<u64>,
    pub offset_mode: OffsetMode,
    /// Keep every run's first-success matrix.
    pub record_pairs: bool,
}

impl SimConfig {
    pub fn new(scheme: SimScheme, runs: usize, seed: u64) -> Self {
        Self { scheme, runs, seed, max_slots: None, offset_mode: OffsetMode::UniformRandom, record_pairs: false }
    }

    pub fn with_offsets(mut self, mode: OffsetMode) -> Self {
        self.offset_mode = mode;
        self
    }

    pub fn with_max_slots(mut self, max_slots: u64) -> Self {
        self.max_slots = Some(max_slots);
        self
    }

    pub fn recording_pairs(mut self) -> Self {
        self.record_pairs = true;
        self
    }

    /// The slot cap this configuration runs with.
    pub fn effective_max_slots(&self) -> Result<u64> {
        if let Some(cap) = self.max_slots {
            return Ok(cap);
        }
        match &self.scheme {
            SimScheme::Sequence(set) => Ok(CAP_FACTOR * set.period() as u64),
            scheme => {
                let k = scheme.nodes();
                let p = scheme.pair_success().unwrap_or(0.0);
                if !(p > 0.0) {
                    return Err(Error::InvalidParams("random scheme with zero pair success".into()));
                }
                let frame = match CouponModel::new(k, p).and_then(|m| frame_length(&m, RANDOM_FRAME_TARGET)) {
                    Ok(l) => l,
                    // Union bound over the K(K-1) pairs when the exact sum is out of reach.
                    Err(_) => {
                        let pairs = (k * (k - 1)) as f64;
                        ((pairs / (1.0 - RANDOM_FRAME_TARGET)).ln() / p).ceil() as u64
                    }
                };
                Ok(CAP_FACTOR * frame)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Completion {
    /// Slots until the last ordered pair first succeeded.
    Completed(u64),
    /// The run hit the slot cap.
    Censored(u64),
}

impl Completion {
    pub fn slots(self) -> u64 {
        match self {
            Self::Completed(t) | Self::Censored(t) => t,
        }
    }

    pub fn is_censored(self) -> bool {
        matches!(self, Self::Censored(_))
    }
}

/// First-success slot of every ordered pair, row-major as `[i * K + j]`.
pub type PairMatrix = Vec<Option<u64>>;

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub completion_times: Vec<Completion>,
    pub per_pair_first_success: Option<Vec<PairMatrix>>,
    pub seed: u64,
    pub max_slots: u64,
}

impl SimResult {
    pub fn censored(&self) -> usize {
        self.completion_times.iter().filter(|c| c.is_censored()).count()
    }

    /// Fraction of all runs that completed within `slots` slots.
    pub fn empirical_cdf(&self, slots: u64) -> f64 {
        let hits = self
            .completion_times
            .iter()
            .filter(|c| matches!(c, Completion::Completed(t) if *t <= slots))
            .count();
        hits as f64 / self.completion_times.len().max(1) as f64
    }

    /// Mean over completed runs.
    pub fn mean_completed(&self) -> Option<f64> {
        let done: Vec<u64> = self
            .completion_times
            .iter()
            .filter_map(|c| match c {
                Completion::Completed(t) => Some(*t),
                Completion::Censored(_) => None,
            })
            .collect();
        (!done.is_empty()).then(|| done.iter().sum::<u64>() as f64 / done.len() as f64)
    }
}

/// One slot of a traced run.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotLog {
    pub slot: u64,
    pub actions: Vec<Symbol>,
    /// Ordered pairs `(transmitter, receiver)` delivered in this slot.
    pub deliveries: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub offsets: Vec<usize>,
    pub completion: Completion,
    pub slots: Vec<SlotLog>,
}

enum Actions {
    Sequence { table: Vec<Vec<Symbol>>, period: usize },
    Random { cumulative: Vec<Vec<(f64, Symbol)>> },
}

struct Runner {
    nodes: usize,
    channels: usize,
    actions: Actions,
    offsets: OffsetMode,
    max_slots: u64,
    seed: u64,
    record_pairs: bool,
}

struct RunOutcome {
    completion: Completion,
    first: Option<PairMatrix>,
    offsets: Vec<usize>,
}

impl Runner {
    fn new(config: &SimConfig) -> Result<Self> {
        let max_slots = config.effective_max_slots()?;
        if max_slots == 0 {
            return Err(Error::InvalidParams("max_slots must be positive".into()));
        }
        let nodes = config.scheme.nodes();
        if nodes < 2 {
            return Err(Error::InvalidParams(format!("need K >= 2, got {nodes}")));
        }
        let actions = match &config.scheme {
            SimScheme::Sequence(set) => {
                let period = set.period();
                if max_slots < period as u64 {
                    return Err(Error::InvalidParams(format!("max_slots {max_slots} is below the period {period}")));
                }
                if let OffsetMode::Fixed(v) = &config.offset_mode {
                    if v.len() != nodes || v.period() != period {
                        return Err(Error::InvalidParams(format!(
                            "fixed offsets need {nodes} entries modulo {period}, got {} modulo {}",
                            v.len(),
                            v.period()
                        )));
                    }
                }
                let table = set.sequences().iter().map(|s| s.symbols().to_vec()).collect();
                Actions::Sequence { table, period }
            }
            SimScheme::AssignTRandom { params, division } => {
                if division.nodes() != params.nodes || division.groups() != params.employed {
                    return Err(Error::InvalidDivision(format!(
                        "division has {} nodes in {} groups, scheme expects {} in {}",
                        division.nodes(),
                        division.groups(),
                        params.nodes,
                        params.employed
                    )));
                }
                let cumulative = (0..nodes)
                    .map(|node| {
                        let own = division.channel_of(node);
                        let mut dist = vec![(params.p_b, Symbol::Transmit(own)), (params.q_1, Symbol::Receive(own))];
                        for c in (0..params.employed).filter(|&c| c != own.index()) {
                            dist.push((params.q_2, Symbol::Receive(Channel::from_index(c))));
                        }
                        accumulate(dist)
                    })
                    .collect();
                Actions::Random { cumulative }
            }
            SimScheme::GeneralRandom(params) => {
                let mut dist = Vec::with_capacity(2 * params.employed);
                for c in 0..params.employed {
                    dist.push((params.p_a, Symbol::Transmit(Channel::from_index(c))));
                    dist.push((params.q_a, Symbol::Receive(Channel::from_index(c))));
                }
                let dist = accumulate(dist);
                Actions::Random { cumulative: vec![dist; nodes] }
            }
        };
        Ok(Self {
            nodes,
            channels: config.scheme.employed(),
            actions,
            offsets: config.offset_mode.clone(),
            max_slots,
            seed: config.seed,
            record_pairs: config.record_pairs,
        })
    }

    fn rng(&self, run: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(run);
        rng
    }

    fn run(&self, run: u64, mut log: Option<&mut Vec<SlotLog>>) -> RunOutcome {
        let k = self.nodes;
        let mut rng = self.rng(run);
        let offsets = match (&self.actions, &self.offsets) {
            (Actions::Sequence { period, .. }, OffsetMode::UniformRandom) => {
                (0..k).map(|_| rng.gen_range(0..*period)).collect()
            }
            (Actions::Sequence { .. }, OffsetMode::Fixed(v)) => v.as_slice().to_vec(),
            _ => vec![0; k],
        };

        let mut first: PairMatrix = vec![None; k * k];
        let mut remaining = k * (k - 1);
        let mut act = vec![Symbol::Receive(Channel::from_index(0)); k];
        let mut tx_count = vec![0u32; self.channels];
        let mut tx_node = vec![0usize; self.channels];
        let mut completion = Completion::Censored(self.max_slots);

        for t in 0..self.max_slots {
            match &self.actions {
                Actions::Sequence { table, period } => {
                    let phase = (t % *period as u64) as usize;
                    for node in 0..k {
                        act[node] = table[node][(phase + offsets[node]) % period];
                    }
                }
                Actions::Random { cumulative } => {
                    for node in 0..k {
                        act[node] = sample(&cumulative[node], rng.gen::<f64>());
                    }
                }
            }
            tx_count.iter_mut().for_each(|c| *c = 0);
            for (node, a) in act.iter().enumerate() {
                if let Symbol::Transmit(c) = a {
                    tx_count[c.index()] += 1;
                    tx_node[c.index()] = node;
                }
            }
            let mut delivered = Vec::new();
            for (j, a) in act.iter().enumerate() {
                if let Symbol::Receive(c) = a {
                    if tx_count[c.index()] == 1 {
                        let i = tx_node[c.index()];
                        if log.is_some() {
                            delivered.push((i, j));
                        }
                        if first[i * k + j].is_none() {
                            first[i * k + j] = Some(t);
                            remaining -= 1;
                        }
                    }
                }
            }
            if let Some(log) = log.as_deref_mut() {
                log.push(SlotLog { slot: t, actions: act.clone(), deliveries: delivered });
            }
            if remaining == 0 {
                completion = Completion::Completed(t + 1);
                break;
            }
        }
        RunOutcome { completion, first: self.record_pairs.then_some(first), offsets }
    }
}

fn accumulate(dist: Vec<(f64, Symbol)>) -> Vec<(f64, Symbol)> {
    let mut acc = 0.0;
    dist.into_iter()
        .filter(|(p, _)| *p > 0.0)
        .map(|(p, s)| {
            acc += p;
            (acc, s)
        })
        .collect()
}

fn sample(cumulative: &[(f64, Symbol)], u: f64) -> Symbol {
    cumulative
        .iter()
        .find(|(c, _)| u < *c)
        .or(cumulative.last())
        .map(|(_, s)| *s)
        .expect("non-empty action distribution")
}

/// Runs `config.runs` independent runs in parallel. Run `r` draws from the
/// ChaCha stream `r` of the master seed, so results do not depend on thread
/// scheduling.
pub fn simulate(config: &SimConfig) -> Result<SimResult> {
    if config.runs == 0 {
        return Err(Error::InvalidParams("runs must be positive".into()));
    }
    let runner = Runner::new(config)?;
    let outcomes: Vec<RunOutcome> = (0..config.runs as u64).into_par_iter().map(|r| runner.run(r, None)).collect();
    let completion_times = outcomes.iter().map(|o| o.completion).collect();
    let per_pair_first_success =
        config.record_pairs.then(|| outcomes.into_iter().map(|o| o.first.unwrap_or_default()).collect());
    Ok(SimResult { completion_times, per_pair_first_success, seed: config.seed, max_slots: runner.max_slots })
}

/// Replays run `run` of `config` with a per-slot log.
pub fn trace_run(config: &SimConfig, run: u64) -> Result<RunTrace> {
    let runner = Runner::new(config)?;
    let mut slots = Vec::new();
    let outcome = runner.run(run, Some(&mut slots));
    Ok(RunTrace { offsets: outcome.offsets, completion: outcome.completion, slots })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    /// First slot count in the bin.
    pub start: u64,
    /// One past the last slot count in the bin.
    pub end: u64,
    pub mass: f64,
    pub cumulative: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionHistogram {
    pub runs: usize,
    pub bin_width: u64,
    pub bins: Vec<HistogramBin>,
    /// Share of runs that hit the slot cap; not part of any bin.
    pub censored_mass: f64,
    pub mean_completed: Option<f64>,
    /// `(q, t)`: smallest completion time whose empirical CDF reaches `q`,
    /// `None` when that quantile falls into the censored mass.
    pub quantiles: Vec<(f64, Option<u64>)>,
}

pub const REPORTED_QUANTILES: [f64; 5] = [0.1, 0.5, 0.9, 0.99, 1.0];

/// Empirical PMF/CDF of completion times over bins `[b w, (b + 1) w)`.
pub fn completion_histogram(result: &SimResult, bin_width: u64) -> CompletionHistogram {
    let bin_width = bin_width.max(1);
    let runs = result.completion_times.len();
    let mut done: Vec<u64> = result
        .completion_times
        .iter()
        .filter_map(|c| match c {
            Completion::Completed(t) => Some(*t),
            Completion::Censored(_) => None,
        })
        .collect();
    done.sort_unstable();
    let total = runs.max(1) as f64;

    let mut bins = Vec::new();
    if let Some(&last) = done.last() {
        let count = (last / bin_width + 1) as usize;
        let mut counts = vec![0usize; count];
        for &t in &done {
            counts[(t / bin_width) as usize] += 1;
        }
        let mut cumulative = 0usize;
        for (b, n) in counts.into_iter().enumerate() {
            cumulative += n;
            let start = b as u64 * bin_width;
            bins.push(HistogramBin {
                start,
                end: start + bin_width,
                mass: n as f64 / total,
                cumulative: cumulative as f64 / total,
            });
        }
    }

    let quantiles = REPORTED_QUANTILES
        .iter()
        .map(|&q| {
            let need = ((q * runs as f64).ceil() as usize).max(1);
            (q, done.get(need - 1).copied())
        })
        .collect();

    CompletionHistogram {
        runs,
        bin_width,
        bins,
        censored_mass: (runs - done.len()) as f64 / total,
        mean_completed: result.mean_completed(),
        quantiles,
    }
}
