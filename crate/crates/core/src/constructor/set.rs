use crate::error::{Error, Result};
use crate::seqcore::{Channel, GroupDivision, ScheduleSequence};

use super::params::ConstructionParams;

/// K schedule sequences of a common period together with the group division
/// they were built for. `params` is present when the set came out of the
/// constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleSequenceSet {
    sequences: Vec<ScheduleSequence>,
    division: GroupDivision,
    channels: usize,
    params: Option<ConstructionParams>,
}

impl ScheduleSequenceSet {
    pub fn new(sequences: Vec<ScheduleSequence>, division: GroupDivision, channels: usize) -> Result<Self> {
        Self::with_params(sequences, division, channels, None)
    }

    pub fn with_params(
        sequences: Vec<ScheduleSequence>,
        division: GroupDivision,
        channels: usize,
        params: Option<ConstructionParams>,
    ) -> Result<Self> {
        if sequences.is_empty() {
            return Err(Error::InvalidSet("no sequences".into()));
        }
        if sequences.len() != division.nodes() {
            return Err(Error::InvalidSet(format!(
                "{} sequences but the division covers {} nodes",
                sequences.len(),
                division.nodes()
            )));
        }
        let w = division.groups();
        if channels < w {
            return Err(Error::InvalidSet(format!("W = {w} exceeds M = {channels}")));
        }
        let period = sequences[0].len();
        if period == 0 {
            return Err(Error::InvalidSet("empty sequences".into()));
        }
        for (i, s) in sequences.iter().enumerate() {
            if s.len() != period {
                return Err(Error::InvalidSet(format!(
                    "sequence {} has length {} but the period is {period}",
                    i + 1,
                    s.len()
                )));
            }
            if s.group() != division.channel_of(i) {
                return Err(Error::InvalidSet(format!(
                    "sequence {} owned by group {} but the division puts it in {}",
                    i + 1,
                    s.group(),
                    division.channel_of(i)
                )));
            }
            if let Some(sym) = s.symbols().iter().find(|sym| sym.channel().index() >= w) {
                return Err(Error::InvalidSet(format!(
                    "sequence {} uses {sym} but only {w} channels are employed",
                    i + 1
                )));
            }
        }
        Ok(Self { sequences, division, channels, params })
    }

    pub fn sequences(&self) -> &[ScheduleSequence] {
        &self.sequences
    }

    pub fn sequence(&self, node: usize) -> &ScheduleSequence {
        &self.sequences[node]
    }

    pub fn division(&self) -> &GroupDivision {
        &self.division
    }

    pub fn params(&self) -> Option<&ConstructionParams> {
        self.params.as_ref()
    }

    /// K
    pub fn nodes(&self) -> usize {
        self.sequences.len()
    }

    /// M
    pub fn channels(&self) -> usize {
        self.channels
    }

    /// W
    pub fn employed(&self) -> usize {
        self.division.groups()
    }

    /// L
    pub fn period(&self) -> usize {
        self.sequences[0].len()
    }

    pub fn channel_of(&self, node: usize) -> Channel {
        self.division.channel_of(node)
    }

    /// Returns a copy with node `node`'s sequence replaced.
    pub fn replace(&self, node: usize, seq: ScheduleSequence) -> Result<Self> {
        let mut sequences = self.sequences.clone();
        sequences[node] = seq;
        Self::with_params(sequences, self.division.clone(), self.channels, None)
    }
}
