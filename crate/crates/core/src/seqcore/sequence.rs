use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A channel index. Stored 0-based; printed and parsed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Channel(u16);

impl Channel {
    pub fn from_index(index: usize) -> Self {
        Channel(u16::try_from(index).expect("channel index fits in u16"))
    }

    pub fn from_number(number: usize) -> Result<Self> {
        if number == 0 || number > u16::MAX as usize {
            return Err(Error::InvalidParams(format!("channel number {number} out of range")));
        }
        Ok(Channel((number - 1) as u16))
    }

    /// 0-based index.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based channel number.
    pub fn number(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// One slot action: transmit on a channel, or listen on one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Transmit(Channel),
    Receive(Channel),
}

impl Symbol {
    pub fn channel(self) -> Channel {
        match self {
            Symbol::Transmit(c) | Symbol::Receive(c) => c,
        }
    }

    pub fn is_transmit(self) -> bool {
        matches!(self, Symbol::Transmit(_))
    }

    pub fn transmits_on(self, ch: Channel) -> bool {
        self == Symbol::Transmit(ch)
    }

    pub fn receives_on(self, ch: Channel) -> bool {
        self == Symbol::Receive(ch)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Transmit(c) => write!(f, "T{c}"),
            Symbol::Receive(c) => write!(f, "R{c}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("malformed symbol {s:?}"));
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let number: usize = digits.parse().map_err(|_| bad())?;
        let ch = Channel::from_number(number).map_err(|_| bad())?;
        match kind {
            'T' => Ok(Symbol::Transmit(ch)),
            'R' => Ok(Symbol::Receive(ch)),
            _ => Err(bad()),
        }
    }
}

/// Rotates left by `tau`: output slot `t` holds input slot `(t + tau) mod L`.
pub fn cyclic_shift<T: Clone>(seq: &[T], tau: usize) -> Result<Vec<T>> {
    let n = seq.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if tau >= n {
        return Err(Error::OutOfRange { value: tau as u64, modulus: n as u64 });
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&seq[tau..]);
    out.extend_from_slice(&seq[..tau]);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    bits: Vec<bool>,
}

impl BinarySequence {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![false; len] }
    }

    /// Length-`len` sequence with ones exactly at `positions`.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = vec![false; len];
        for p in positions {
            if p >= len {
                return Err(Error::OutOfRange { value: p as u64, modulus: len as u64 });
            }
            bits[p] = true;
        }
        Ok(Self { bits })
    }

    pub fn from_01(digits: &[u8]) -> Self {
        Self { bits: digits.iter().map(|&d| d != 0).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, t: usize) -> bool {
        self.bits[t]
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(t, _)| t)
    }

    pub fn shifted(&self, tau: usize) -> Result<Self> {
        Ok(Self { bits: cyclic_shift(&self.bits, tau)? })
    }

    /// Maps 1 to `one` and 0 to `zero`.
    pub fn relabel(&self, one: Symbol, zero: Symbol) -> Vec<Symbol> {
        self.bits.iter().map(|&b| if b { one } else { zero }).collect()
    }
}

/// A node's periodic schedule. Under Assignment T every transmit symbol uses
/// the owner group's channel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScheduleSequence {
    symbols: Vec<Symbol>,
    group: Channel,
}

impl ScheduleSequence {
    pub fn new(symbols: Vec<Symbol>, group: Channel) -> Result<Self> {
        if let Some((t, s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, s)| s.is_transmit() && s.channel() != group)
        {
            return Err(Error::InvalidSet(format!(
                "slot {t} holds {s} but the owner group is {group}"
            )));
        }
        Ok(Self { symbols, group })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn group(&self) -> Channel {
        self.group
    }

    pub fn at(&self, t: usize) -> Symbol {
        self.symbols[t]
    }

    pub fn shifted(&self, tau: usize) -> Result<Self> {
        Ok(Self { symbols: cyclic_shift(&self.symbols, tau)?, group: self.group })
    }

    /// Number of transmit symbols.
    pub fn transmit_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_transmit()).count()
    }

    /// Number of `R_r` symbols.
    pub fn receive_count(&self, ch: Channel) -> usize {
        self.symbols.iter().filter(|s| s.receives_on(ch)).count()
    }

    /// Indicator of `T_ch` positions.
    pub fn transmit_indicator(&self, ch: Channel) -> BinarySequence {
        BinarySequence::new(self.symbols.iter().map(|s| s.transmits_on(ch)).collect())
    }

    /// Indicator of `R_ch` positions.
    pub fn receive_indicator(&self, ch: Channel) -> BinarySequence {
        BinarySequence::new(self.symbols.iter().map(|s| s.receives_on(ch)).collect())
    }
}

/// Per-node time offsets, each in `Z_L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffsetVector {
    offsets: Vec<usize>,
    period: usize,
}

impl OffsetVector {
    pub fn new(offsets: Vec<usize>, period: usize) -> Result<Self> {
        if let Some(&bad) = offsets.iter().find(|&&o| o >= period) {
            return Err(Error::OutOfRange { value: bad as u64, modulus: period as u64 });
        }
        Ok(Self { offsets, period })
    }

    pub fn zeros(nodes: usize, period: usize) -> Self {
        Self { offsets: vec![0; nodes], period }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.offsets
    }

    pub fn get(&self, node: usize) -> usize {
        self.offsets[node]
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Adds `c` to every offset modulo the period.
    pub fn rotated(&self, c: usize) -> Self {
        Self {
            offsets: self.offsets.iter().map(|&o| (o + c) % self.period).collect(),
            period: self.period,
        }
    }
}
