use crate::error::{Error, Result};

/// General scheme: each slot a node transmits on any one of W channels with
/// probability `p_a` each and listens on any one with `q_a` each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralRandomParams {
    pub employed: usize,
    pub nodes: usize,
    pub p_a: f64,
    pub q_a: f64,
}

impl GeneralRandomParams {
    pub fn new(employed: usize, nodes: usize, p_a: f64) -> Result<Self> {
        if employed == 0 {
            return Err(Error::Domain("W must be at least 1".into()));
        }
        if nodes < 2 {
            return Err(Error::Domain(format!("need K >= 2, got {nodes}")));
        }
        let w = employed as f64;
        if !(p_a > 0.0 && p_a < 1.0 / w) {
            return Err(Error::Domain(format!("need 0 < p_a < 1/W, got p_a = {p_a}, W = {employed}")));
        }
        Ok(Self { employed, nodes, p_a, q_a: 1.0 / w - p_a })
    }

    /// `P_a = W p_a q_a (1 - p_a)^{K-2}`.
    pub fn success(&self) -> f64 {
        self.employed as f64 * self.p_a * self.q_a * (1.0 - self.p_a).powi(self.nodes as i32 - 2)
    }
}

/// Assignment-T scheme: transmit on the own channel with `p_b`, listen on
/// it with `q_1`, listen on each other channel with `q_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssignTRandomParams {
    pub employed: usize,
    pub nodes: usize,
    pub p_b: f64,
    pub q_1: f64,
    pub q_2: f64,
}

impl AssignTRandomParams {
    pub fn new(employed: usize, nodes: usize, p_b: f64, q_1: f64, q_2: f64) -> Result<Self> {
        if employed == 0 || nodes < 2 {
            return Err(Error::Domain(format!("need W >= 1 and K >= 2, got W = {employed}, K = {nodes}")));
        }
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(p_b) || !in_unit(q_1) || (employed > 1 && !in_unit(q_2)) {
            return Err(Error::Domain(format!("probabilities must lie in (0, 1): {p_b}, {q_1}, {q_2}")));
        }
        let total = p_b + q_1 + (employed as f64 - 1.0) * q_2;
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("p_b + q_1 + (W - 1) q_2 = {total}, expected 1")));
        }
        Ok(Self { employed, nodes, p_b, q_1, q_2 })
    }

    /// Parameters that equalise intra- and inter-group success:
    /// `q_2 = (1 - p_b)/(W - p_b)`, `q_1 = (1 - p_b) q_2`.
    pub fn balanced(employed: usize, nodes: usize, p_b: f64) -> Result<Self> {
        if employed == 0 {
            return Err(Error::Domain("W must be at least 1".into()));
        }
        if !(p_b > 0.0 && p_b < 1.0) {
            return Err(Error::Domain(format!("need 0 < p_b < 1, got {p_b}")));
        }
        let w = employed as f64;
        let q_2 = (1.0 - p_b) / (w - p_b);
        let q_1 = (1.0 - p_b) * q_2;
        let q_2 = if employed == 1 { 0.0 } else { q_2 };
        Self::new(employed, nodes, p_b, q_1, q_2)
    }

    /// `P_beta = p_b (1 - p_b)^{K/W} / (W - p_b)` with a real exponent.
    pub fn success(&self) -> f64 {
        let w = self.employed as f64;
        self.p_b * (1.0 - self.p_b).powf(self.nodes as f64 / w) / (w - self.p_b)
    }
}

pub fn p_success_general(employed: usize, nodes: usize, p_a: f64) -> Result<f64> {
    Ok(GeneralRandomParams::new(employed, nodes, p_a)?.success())
}

pub fn p_success_assign_t(employed: usize, nodes: usize, p_b: f64) -> Result<AssignTRandomParams> {
    AssignTRandomParams::balanced(employed, nodes, p_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_examples() {
        assert!((p_success_general(1, 2, 0.5).unwrap() - 0.25).abs() < 1e-15);
        for k in 2..30 {
            let kf = k as f64;
            let expected = (kf - 1.0).powf(kf - 1.0) / kf.powf(kf);
            assert!((p_success_general(1, k, 1.0 / kf).unwrap() - expected).abs() < 1e-15);
        }
        assert!(p_success_general(2, 10, 0.5).is_err());
        assert!(p_success_general(2, 10, 0.0).is_err());
        assert!(p_success_general(1, 1, 0.3).is_err());
    }

    #[test]
    fn assign_t_examples() {
        let r = p_success_assign_t(2, 10, 0.1).unwrap();
        assert!((r.success() - 0.1 * 0.9f64.powi(5) / 1.9).abs() < 1e-15);
        assert!((r.success() - 0.031_078_4).abs() < 1e-7);
        assert!((r.p_b + r.q_1 + r.q_2 - 1.0).abs() < 1e-15);
        // One channel collapses to p (1 - p)^{K-1}.
        for k in 2..20 {
            let p = 0.37;
            let r = p_success_assign_t(1, k, p).unwrap();
            assert!((r.success() - p * (1.0 - p).powi(k as i32 - 1)).abs() < 1e-15);
            assert!((r.success() - p_success_general(1, k, p).unwrap()).abs() < 1e-15);
        }
        assert!(p_success_assign_t(2, 10, 1.0).is_err());
    }

    #[test]
    fn intra_and_inter_group_success_balance() {
        // With |G| = K/W: p q_1 (1-p)^{|G|-2} == p q_2 (1-p)^{|G|-1}.
        let r = p_success_assign_t(3, 18, 0.2).unwrap();
        let g = 6;
        let intra = r.p_b * r.q_1 * (1.0 - r.p_b).powi(g - 2);
        let inter = r.p_b * r.q_2 * (1.0 - r.p_b).powi(g - 1);
        assert!((intra - inter).abs() < 1e-15);
        assert!((inter - r.success()).abs() < 1e-15);
    }

    #[test]
    fn optimal_success_decreases_with_more_channels() {
        use crate::random_schemes::{optimize_random, Scheme};
        for k in [6usize, 10, 18, 30] {
            for scheme in [Scheme::General, Scheme::AssignT] {
                let mut last = f64::INFINITY;
                for w in 1..=5 {
                    let best = optimize_random(w, k, scheme).value;
                    assert!(best < last, "K = {k}, W = {w}, {scheme:?}");
                    last = best;
                }
            }
        }
    }
}
