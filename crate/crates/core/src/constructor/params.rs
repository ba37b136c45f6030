use num_integer::gcd;

use crate::error::{Error, Result};
use crate::seqcore::{Crt, GroupDivision};

use super::crt_ui::CrtUiParams;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Channel-count threshold `M' = ceil(sqrt(K/2 + 9/16) + 3/4)` beyond which
/// employing more channels lengthens the construction.
pub fn m_prime(nodes: usize) -> usize {
    // n >= sqrt(K/2 + 9/16) + 3/4  <=>  (4n - 3)^2 >= 8K + 9, for n >= 1.
    let target = 8 * nodes as u64 + 9;
    (1usize..)
        .find(|&n| {
            let v = 4 * n as u64 - 3;
            v * v >= target
        })
        .expect("unbounded search")
}

/// Everything that pins down one instance of the construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstructionParams {
    /// K
    pub nodes: usize,
    /// M
    pub channels: usize,
    /// W, the number of non-empty groups.
    pub employed: usize,
    pub division: GroupDivision,
    /// Largest group size.
    pub max_group: usize,
    /// Hamming weight of the underlying CRT-UI sequences.
    pub weight: usize,
    pub p: u64,
    pub q: u64,
    /// Period of the CRT-UI rows, `p * q`.
    pub base_period: usize,
    /// Schedule period: `2W * p * q`, or `p * q` on the single-channel path.
    pub period: usize,
    /// Row offsets `delta_m` with `Phi(delta_m) = (m - 1, 0)`; empty when W = 1.
    pub deltas: Vec<usize>,
}

impl ConstructionParams {
    pub fn crt_ui(&self) -> CrtUiParams {
        CrtUiParams {
            generators: self.max_group,
            weight: self.weight,
            p: self.p,
            q: self.q,
        }
    }

    pub fn rows(&self) -> usize {
        if self.employed == 1 {
            1
        } else {
            2 * self.employed
        }
    }
}

pub fn select_params(
    nodes: usize,
    channels: usize,
    employed: usize,
    division: GroupDivision,
) -> Result<ConstructionParams> {
    if employed == 0 || employed > channels {
        return Err(Error::InvalidParams(format!("need 1 <= W <= M, got W = {employed}, M = {channels}")));
    }
    if channels > nodes {
        return Err(Error::InvalidParams(format!("need M <= K, got M = {channels}, K = {nodes}")));
    }
    if division.nodes() != nodes || division.groups() != employed {
        return Err(Error::InvalidDivision(format!(
            "division covers {} nodes in {} groups, expected {nodes} in {employed}",
            division.nodes(),
            division.groups()
        )));
    }
    let max_group = division.max_size();

    if employed == 1 {
        let weight = nodes;
        let w = weight as u64;
        let p = (w..).find(|&p| is_prime(p)).expect("primes are unbounded");
        let q = ((2 * w).saturating_sub(1).max(1)..)
            .find(|&q| gcd(q, p) == 1)
            .expect("coprime q exists");
        let base_period = (p * q) as usize;
        return Ok(ConstructionParams {
            nodes,
            channels,
            employed,
            division,
            max_group,
            weight,
            p,
            q,
            base_period,
            period: base_period,
            deltas: Vec::new(),
        });
    }

    let two_w = 2 * employed as u64;
    let weight = max_group + 1;
    let w = weight as u64;
    let p = (w.max(two_w - 2)..)
        .find(|&p| is_prime(p) && gcd(p, two_w) == 1)
        .expect("primes are unbounded");
    let q = ((2 * w - 1)..)
        .find(|&q| gcd(q, p) == 1 && gcd(q, two_w) == 1)
        .expect("coprime q exists");
    // Generators 1..=l must lie in [p - 1] for the auto-correlation argument.
    assert!((max_group as u64) < p, "generator {max_group} exceeds p - 1 = {}", p - 1);
    let base_period = (p * q) as usize;
    assert_eq!(gcd(two_w, p * q), 1, "2W must be coprime with L'");

    let crt = Crt::new(p, q)?;
    let deltas = (0..employed as u64)
        .map(|m| crt.inverse(m, 0).map(|d| d as usize))
        .collect::<Result<Vec<_>>>()?;

    Ok(ConstructionParams {
        nodes,
        channels,
        employed,
        division,
        max_group,
        weight,
        p,
        q,
        base_period,
        period: 2 * employed * base_period,
        deltas,
    })
}

/// Outcome of scanning every W in `[1, M]` under even division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WChoice {
    pub employed: usize,
    pub params: ConstructionParams,
    pub m_prime: usize,
    /// `(W, L)` for every candidate, in W order.
    pub candidates: Vec<(usize, usize)>,
}

/// Picks the W in `[1, M]` with the shortest period, ties going to the
/// smaller W. Every W is evaluated since prime gaps make L non-monotone.
pub fn choose_w(nodes: usize, channels: usize) -> Result<WChoice> {
    if channels == 0 || channels > nodes {
        return Err(Error::InvalidParams(format!("need 1 <= M <= K, got M = {channels}, K = {nodes}")));
    }
    let mut best: Option<ConstructionParams> = None;
    let mut candidates = Vec::with_capacity(channels);
    for w in 1..=channels {
        let params = select_params(nodes, channels, w, GroupDivision::even(nodes, w)?)?;
        candidates.push((w, params.period));
        if best.as_ref().is_none_or(|b| params.period < b.period) {
            best = Some(params);
        }
    }
    let params = best.expect("at least one candidate");
    Ok(WChoice {
        employed: params.employed,
        params,
        m_prime: m_prime(nodes),
        candidates,
    })
}

/// `2M (2 ceil(K/M) + 2)(4 ceil(K/M) + 2)`, valid for even division with
/// `W = M <= M'`.
pub fn length_upper_bound(nodes: usize, channels: usize) -> Result<u64> {
    if channels == 0 || channels > nodes {
        return Err(Error::InvalidParams(format!("need 1 <= M <= K, got M = {channels}, K = {nodes}")));
    }
    let mp = m_prime(nodes);
    if channels > mp {
        return Err(Error::InvalidParams(format!("M = {channels} exceeds M' = {mp}")));
    }
    let c = nodes.div_ceil(channels) as u64;
    let m = channels as u64;
    Ok(2 * m * (2 * c + 2) * (4 * c + 2))
}
