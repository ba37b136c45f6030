use crate::constructor::{m_prime, select_params};
use crate::error::{Error, Result};
use crate::seqcore::GroupDivision;

use super::blocking::{b_sequence, RecursionForm};

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// W
    pub employed: usize,
    /// k, the smallest group size.
    pub min_group: usize,
    /// M
    pub channels: usize,
    /// K
    pub nodes: usize,
    /// `ceil(8 (k-1)^2 W eps / 9)` with `eps = 1 - 1/k`; 0 when k = 1.
    pub bound_thm2: u64,
    /// `4 W (k-1)` for k >= 2, `4 (W-1)` for k = 1.
    pub bound_thm3: u64,
    pub combined: u64,
    /// `ceil(8 (k-1)^2 W / 9)`, valid when every transmit count is a
    /// multiple of W. Only filled in on request.
    pub remark_bound: Option<u64>,
    /// Recursion with `b_1 = k - 1`, `mu = W eps` at `L = bound_thm2 - 1`:
    /// its `(k-1)`-th term must fall below 1.
    pub b_sequence: Vec<i64>,
    pub epsilon: f64,
}

pub fn lower_bound(employed: usize, min_group: usize, channels: usize, nodes: usize) -> BoundReport {
    lower_bound_with(employed, min_group, channels, nodes, false)
}

pub fn lower_bound_with(
    employed: usize,
    min_group: usize,
    channels: usize,
    nodes: usize,
    transmit_multiple_of_w: bool,
) -> BoundReport {
    let w = employed as u64;
    let k = min_group as u64;
    if k <= 1 {
        let b = 4 * w.saturating_sub(1);
        return BoundReport {
            employed,
            min_group,
            channels,
            nodes,
            bound_thm2: 0,
            bound_thm3: b,
            combined: b,
            remark_bound: None,
            b_sequence: Vec::new(),
            epsilon: 0.0,
        };
    }
    let c = k - 1;
    // ceil(8 (k-1)^2 W (1 - 1/k) / 9) = ceil(8 W (k-1)^3 / (9k)), in integers.
    let bound_thm2 = (8 * w * c * c * c).div_ceil(9 * k);
    let bound_thm3 = 4 * w * c;
    let epsilon = 1.0 - 1.0 / k as f64;
    let remark_bound = transmit_multiple_of_w.then(|| (8 * c * c * w).div_ceil(9));
    let b_sequence = b_sequence(
        c as i64,
        RecursionForm::Direct { mu: w as f64 * epsilon },
        bound_thm2.saturating_sub(1).max(1),
        c as usize,
    );
    BoundReport {
        employed,
        min_group,
        channels,
        nodes,
        bound_thm2,
        bound_thm3,
        combined: bound_thm2.max(bound_thm3),
        remark_bound,
        b_sequence,
        epsilon,
    }
}

/// One cell of the construction-to-bound comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCell {
    pub nodes: usize,
    pub channels: usize,
    pub period: usize,
    pub bound: u64,
    /// `period / bound` rounded to two decimals.
    pub ratio: f64,
}

/// Even division with `W = M`; cells with `M > M'` are skipped.
pub fn ratio_table(nodes: &[usize], channels: &[usize]) -> Result<Vec<RatioCell>> {
    let mut out = Vec::new();
    for &m in channels {
        for &k in nodes {
            if m > m_prime(k) || m > k {
                continue;
            }
            let params = select_params(k, m, m, GroupDivision::even(k, m)?)?;
            let bound = lower_bound(m, k / m, m, k).combined;
            if bound == 0 {
                return Err(Error::InvalidParams(format!("zero lower bound at K = {k}, M = {m}")));
            }
            let ratio = (params.period as f64 / bound as f64 * 100.0).round() / 100.0;
            out.push(RatioCell { nodes: k, channels: m, period: params.period, bound, ratio });
        }
    }
    Ok(out)
}
