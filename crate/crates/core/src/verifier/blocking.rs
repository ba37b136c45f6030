use crate::error::{Error, Result};
use crate::seqcore::{cross_correlation_profile, BinarySequence};

/// Record of one run of the blocking procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingTrace {
    /// Surviving ones of the target, `a_1..a_k`.
    pub a: Vec<usize>,
    /// Offset chosen for each competitor, `tau_2..tau_k`.
    pub offsets: Vec<usize>,
    /// Weights of the competitors, `w_2..w_k`.
    pub weights: Vec<usize>,
}

/// Shifts each competitor in turn to knock out as many of the target's
/// remaining ones as possible. Ties go to the smallest offset.
pub fn blocking_run(target: &BinarySequence, competitors: &[BinarySequence]) -> Result<BlockingTrace> {
    let n = target.len();
    let mut residual = target.clone();
    let mut trace = BlockingTrace {
        a: vec![target.weight()],
        offsets: Vec::with_capacity(competitors.len()),
        weights: Vec::with_capacity(competitors.len()),
    };
    for e in competitors {
        if e.len() != n {
            return Err(Error::LengthMismatch { left: n, right: e.len() });
        }
        let profile = cross_correlation_profile(&residual, e)?;
        let (tau, best) = profile
            .iter()
            .enumerate()
            .fold((0, 0), |acc, (tau, &h)| if h > acc.1 { (tau, h) } else { acc });
        let remaining = residual.ones().filter(|&t| !e.get((t + tau) % n));
        residual = BinarySequence::from_positions(n, remaining.collect::<Vec<_>>())?;
        trace.offsets.push(tau);
        trace.weights.push(e.weight());
        trace.a.push(trace.a.last().unwrap() - best);
    }
    Ok(trace)
}

/// Which recursion `b_sequence` evaluates; both have the shape
/// `b_next = b - ceil(b * b_first * factor / L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecursionForm {
    /// `b_r = b_{r-1} - ceil(b_{r-1} b_1 mu / L)`, starting from `b_1`.
    Direct { mu: f64 },
    /// `b_j = b_{j-1} - ceil(b_{j-1} b_2 W eps / L)`, starting from `b_2`.
    Comparison { employed: usize, epsilon: f64 },
}

/// First `steps` terms of the chosen recursion, evaluated as written (terms
/// may go non-positive).
pub fn b_sequence(start: i64, form: RecursionForm, period: u64, steps: usize) -> Vec<i64> {
    let factor = match form {
        RecursionForm::Direct { mu } => mu,
        RecursionForm::Comparison { employed, epsilon } => employed as f64 * epsilon,
    };
    let mut out = Vec::with_capacity(steps);
    let mut b = start;
    for _ in 0..steps {
        out.push(b);
        let step = (b as f64 * start as f64 * factor / period as f64).ceil() as i64;
        b -= step;
    }
    out
}
