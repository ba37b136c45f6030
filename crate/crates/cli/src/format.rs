//! JSON file format for schedule sequence sets.

use serde::{Deserialize, Serialize};

use schedseq::constructor::ScheduleSequenceSet;
use schedseq::seqcore::{Channel, GroupDivision, ScheduleSequence, Symbol};

use crate::CliError;

pub const SET_SCHEMA: &str = "schedseq.sequence-set/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileParams {
    pub w: usize,
    pub p: u64,
    pub q: u64,
    #[serde(rename = "Lprime")]
    pub l_prime: usize,
    pub deltas: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSetFile {
    pub schema_version: String,
    #[serde(rename = "K")]
    pub nodes: usize,
    #[serde(rename = "M")]
    pub channels: usize,
    #[serde(rename = "W")]
    pub employed: usize,
    #[serde(rename = "L")]
    pub period: usize,
    /// Construction parameters, absent for hand-written sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<FileParams>,
    /// 1-based group of every node.
    pub division: Vec<usize>,
    pub sequences: Vec<Vec<String>>,
}

impl SequenceSetFile {
    pub fn from_set(set: &ScheduleSequenceSet) -> Self {
        let params = set.params().map(|p| FileParams {
            w: p.weight,
            p: p.p,
            q: p.q,
            l_prime: p.base_period,
            deltas: p.deltas.clone(),
        });
        Self {
            schema_version: SET_SCHEMA.to_string(),
            nodes: set.nodes(),
            channels: set.channels(),
            employed: set.employed(),
            period: set.period(),
            params,
            division: set.division().assignment().iter().map(|g| g + 1).collect(),
            sequences: set
                .sequences()
                .iter()
                .map(|s| s.symbols().iter().map(Symbol::to_string).collect())
                .collect(),
        }
    }

    /// Rebuilds the set, checking every declared size against the content.
    pub fn to_set(&self) -> Result<ScheduleSequenceSet, CliError> {
        let schema = |msg: String| CliError::Schema(msg);
        if self.schema_version != SET_SCHEMA {
            return Err(schema(format!("unsupported schema_version {:?}, expected {SET_SCHEMA:?}", self.schema_version)));
        }
        if self.division.len() != self.nodes || self.sequences.len() != self.nodes {
            return Err(schema(format!(
                "K = {} but the file has {} division entries and {} sequences",
                self.nodes,
                self.division.len(),
                self.sequences.len()
            )));
        }
        if let Some(g) = self.division.iter().find(|&&g| g == 0 || g > self.employed) {
            return Err(schema(format!("group {g} outside [1, W = {}]", self.employed)));
        }
        let division = GroupDivision::new(self.division.iter().map(|g| g - 1).collect(), self.employed)?;
        let mut sequences = Vec::with_capacity(self.nodes);
        for (node, raw) in self.sequences.iter().enumerate() {
            if raw.len() != self.period {
                return Err(schema(format!("sequence {} has length {}, expected L = {}", node + 1, raw.len(), self.period)));
            }
            let symbols = raw
                .iter()
                .map(|s| {
                    let sym: Symbol = s.parse().map_err(|_| schema(format!("bad symbol {s:?} in sequence {}", node + 1)))?;
                    if sym.channel().number() > self.employed {
                        return Err(schema(format!("symbol {s} in sequence {} exceeds W = {}", node + 1, self.employed)));
                    }
                    Ok(sym)
                })
                .collect::<Result<Vec<_>, _>>()?;
            sequences.push(ScheduleSequence::new(symbols, Channel::from_index(self.division[node] - 1))?);
        }
        Ok(ScheduleSequenceSet::new(sequences, division, self.channels)?)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("set file serializes")
    }
}
