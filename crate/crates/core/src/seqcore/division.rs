use crate::error::{Error, Result};

use super::Channel;

/// Partition of nodes `0..K` into `W` non-empty groups; group `m` transmits
/// on channel `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDivision {
    assignment: Vec<usize>,
    groups: usize,
}

impl GroupDivision {
    pub fn new(assignment: Vec<usize>, groups: usize) -> Result<Self> {
        if groups == 0 {
            return Err(Error::InvalidDivision("at least one group is required".into()));
        }
        let mut sizes = vec![0usize; groups];
        for (i, &g) in assignment.iter().enumerate() {
            if g >= groups {
                return Err(Error::InvalidDivision(format!(
                    "node {} assigned to group {} but W = {groups}",
                    i + 1,
                    g + 1
                )));
            }
            sizes[g] += 1;
        }
        if let Some(m) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidDivision(format!("group {} is empty", m + 1)));
        }
        Ok(Self { assignment, groups })
    }

    /// Round-robin division: node `i` (0-based) joins group `i mod W`.
    pub fn even(nodes: usize, groups: usize) -> Result<Self> {
        if groups > nodes {
            return Err(Error::InvalidDivision(format!(
                "cannot split {nodes} nodes into {groups} non-empty groups"
            )));
        }
        Self::new((0..nodes).map(|i| i % groups).collect(), groups)
    }

    pub fn nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    pub fn group_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn channel_of(&self, node: usize) -> Channel {
        Channel::from_index(self.assignment[node])
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn members(&self, group: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &g)| g == group)
            .map(|(i, _)| i)
    }

    pub fn size(&self, group: usize) -> usize {
        self.assignment.iter().filter(|&&g| g == group).count()
    }

    /// 0-based rank of `node` among its group's members.
    pub fn rank_in_group(&self, node: usize) -> usize {
        let g = self.assignment[node];
        self.assignment[..node].iter().filter(|&&x| x == g).count()
    }

    /// Smallest group size `k`.
    pub fn min_size(&self) -> usize {
        (0..self.groups).map(|g| self.size(g)).min().unwrap_or(0)
    }

    /// Largest group size `l`.
    pub fn max_size(&self) -> usize {
        (0..self.groups).map(|g| self.size(g)).max().unwrap_or(0)
    }
}
