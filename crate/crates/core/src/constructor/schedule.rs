use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::seqcore::{BinarySequence, Channel, Crt, GroupDivision, ScheduleSequence, Symbol};

use super::crt_ui::build_crt_ui;
use super::params::{choose_w, select_params, ConstructionParams};
use super::set::ScheduleSequenceSet;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Force W instead of picking the shortest period.
    pub employed: Option<usize>,
    /// Shuffle which of the l per-group sequences each node receives.
    pub selection_seed: Option<u64>,
}

/// The `2W x L'` array for the node of rank `rank` (0-based) in group
/// `group` (0-based): rows `2r` and `2r + 1` are `u_n(T_m, R_r)` and its
/// `delta_m` shift.
fn array_for(
    params: &ConstructionParams,
    rows: &[BinarySequence],
    group: usize,
    rank: usize,
) -> Result<Vec<Vec<Symbol>>> {
    let u = &rows[rank];
    let shifted = u.shifted(params.deltas[group])?;
    let tx = Symbol::Transmit(Channel::from_index(group));
    let mut out = Vec::with_capacity(2 * params.employed);
    for r in 0..params.employed {
        let rx = Symbol::Receive(Channel::from_index(r));
        out.push(u.relabel(tx, rx));
        out.push(shifted.relabel(tx, rx));
    }
    Ok(out)
}

fn generator_rows(params: &ConstructionParams) -> Result<Vec<BinarySequence>> {
    let ui = params.crt_ui();
    (1..=params.max_group).map(|g| build_crt_ui(&ui, g)).collect()
}

/// Array form of node `node`'s schedule (multi-channel path only).
pub fn build_array(params: &ConstructionParams, node: usize) -> Result<Vec<Vec<Symbol>>> {
    if params.employed < 2 {
        return Err(Error::InvalidParams("the single-channel path has no array form".into()));
    }
    if node >= params.division.nodes() {
        return Err(Error::InvalidParams(format!("node {} outside [1, {}]", node + 1, params.division.nodes())));
    }
    let rows = generator_rows(params)?;
    array_for(
        params,
        &rows,
        params.division.group_of(node),
        params.division.rank_in_group(node),
    )
}

/// Builds a K-node set for M channels under even group division.
pub fn build_schedule_set(nodes: usize, channels: usize, opts: BuildOptions) -> Result<ScheduleSequenceSet> {
    let params = match opts.employed {
        Some(w) => select_params(nodes, channels, w, GroupDivision::even(nodes, w)?)?,
        None => choose_w(nodes, channels)?.params,
    };
    build_from_params(params, opts.selection_seed)
}

pub(crate) fn build_from_params(params: ConstructionParams, seed: Option<u64>) -> Result<ScheduleSequenceSet> {
    let rows = generator_rows(&params)?;
    let division = params.division.clone();
    let w = params.employed;

    // Which of the l generator rows each node uses.
    let mut rank_of: Vec<usize> = (0..division.nodes()).map(|i| division.rank_in_group(i)).collect();
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in 0..w {
            let members: Vec<usize> = division.members(g).collect();
            let mut pool: Vec<usize> = (0..params.max_group).collect();
            pool.shuffle(&mut rng);
            for (node, rank) in members.into_iter().zip(pool) {
                rank_of[node] = rank;
            }
        }
    }

    let sequences = if w == 1 {
        let ch = Channel::from_index(0);
        rank_of
            .iter()
            .map(|&n| ScheduleSequence::new(rows[n].relabel(Symbol::Transmit(ch), Symbol::Receive(ch)), ch))
            .collect::<Result<Vec<_>>>()?
    } else {
        let crt = Crt::new(2 * w as u64, params.base_period as u64)?;
        (0..division.nodes())
            .map(|i| {
                let g = division.group_of(i);
                let array = array_for(&params, &rows, g, rank_of[i])?;
                ScheduleSequence::new(crt.unfold(&array)?, Channel::from_index(g))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let channels = params.channels;
    ScheduleSequenceSet::with_params(sequences, division, channels, Some(params))
}
