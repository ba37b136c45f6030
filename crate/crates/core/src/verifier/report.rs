use crate::seqcore::OffsetVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Every offset combination was enumerated and delivery always succeeds.
    Proven,
    /// A worst-case count argument shows delivery always succeeds.
    ProvenConservative,
    /// Offsets under which some ordered pair never succeeds.
    FailedWithWitness,
    /// Nothing could be concluded (budget exhausted, bound too weak, or no
    /// counterexample sampled).
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exhaustive,
    Conservative,
    Randomized,
}

/// A failing pair and offsets (0-based node, offset) for the transmitter's
/// group and the receiver. Nodes not listed are irrelevant to this pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub transmitter: usize,
    pub receiver: usize,
    pub offsets: Vec<(usize, usize)>,
}

impl Witness {
    /// Full offset vector with unlisted nodes at 0.
    pub fn offset_vector(&self, nodes: usize, period: usize) -> OffsetVector {
        let mut v = vec![0; nodes];
        for &(node, off) in &self.offsets {
            v[node] = off;
        }
        OffsetVector::new(v, period).expect("witness offsets lie in Z_L")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub pairs_checked: usize,
    pub method: Method,
    /// Offset combinations (or samples) actually evaluated.
    pub evaluations: u64,
}

impl VerificationReport {
    pub fn is_proven(&self) -> bool {
        matches!(self.verdict, Verdict::Proven | Verdict::ProvenConservative)
    }
}
