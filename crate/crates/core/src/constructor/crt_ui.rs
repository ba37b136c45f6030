use num_integer::gcd;

use crate::error::{Error, Result};
use crate::seqcore::{BinarySequence, Crt};

use super::params::is_prime;

/// Parameters of a CRT-UI sequence family: `generators` sequences of weight
/// `weight` and period `p * q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrtUiParams {
    pub generators: usize,
    pub weight: usize,
    pub p: u64,
    pub q: u64,
}

impl CrtUiParams {
    pub fn new(generators: usize, weight: usize, p: u64, q: u64) -> Result<Self> {
        let params = Self { generators, weight, p, q };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.weight as u64;
        if self.generators == 0 || self.weight < self.generators {
            return Err(Error::InvalidParams(format!(
                "need 1 <= generators <= w, got {} generators with w = {}",
                self.generators, self.weight
            )));
        }
        if !is_prime(self.p) || self.p < w {
            return Err(Error::InvalidParams(format!("p = {} must be a prime >= w = {w}", self.p)));
        }
        if gcd(self.p, self.q) != 1 {
            return Err(Error::NotCoprime { p: self.p, q: self.q });
        }
        if self.q < 2 * w - 1 {
            return Err(Error::InvalidParams(format!("q = {} must be >= 2w - 1 = {}", self.q, 2 * w - 1)));
        }
        Ok(())
    }

    pub fn period(&self) -> usize {
        (self.p * self.q) as usize
    }
}

/// Sequence for generator `g` (1-based): ones exactly where
/// `Phi(t) = (u*g mod p, u mod q)` for `u` in `Z_w`.
pub fn build_crt_ui(params: &CrtUiParams, g: usize) -> Result<BinarySequence> {
    params.validate()?;
    if g == 0 || g > params.generators {
        return Err(Error::InvalidParams(format!(
            "generator {g} outside [1, {}]",
            params.generators
        )));
    }
    let crt = Crt::new(params.p, params.q)?;
    let positions = (0..params.weight as u64)
        .map(|u| crt.inverse((u * g as u64) % params.p, u % params.q).map(|t| t as usize))
        .collect::<Result<Vec<_>>>()?;
    BinarySequence::from_positions(params.period(), positions)
}

/// Closed-form auto-correlation of generator `g`'s sequence at shift `tau`:
/// `w - d` when `Phi(tau) = +-(g, 1) * d` for some `d` in `Z_w`, else 0.
pub fn auto_correlation_predict(params: &CrtUiParams, g: usize, tau: usize) -> Result<usize> {
    params.validate()?;
    let (p, q) = (params.p, params.q);
    if g == 0 || g as u64 >= p {
        return Err(Error::InvalidParams(format!("generator {g} outside [1, p - 1 = {}]", p - 1)));
    }
    let crt = Crt::new(p, q)?;
    let (a, b) = crt.map(tau as u64)?;
    let g = g as u64;
    for d in 0..params.weight as u64 {
        let plus = ((g * d) % p, d % q);
        let minus = ((p - plus.0) % p, (q - plus.1) % q);
        if (a, b) == plus || (a, b) == minus {
            return Ok(params.weight - d as usize);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::hamming_cross_correlation;

    fn example() -> CrtUiParams {
        CrtUiParams::new(3, 3, 3, 5).unwrap()
    }

    #[test]
    fn three_generator_example() {
        let p = example();
        let ones = |g| build_crt_ui(&p, g).unwrap().ones().collect::<Vec<_>>();
        assert_eq!(ones(1), vec![0, 1, 2]);
        assert_eq!(ones(2), vec![0, 7, 11]);
        assert_eq!(ones(3), vec![0, 6, 12]);
    }

    #[test]
    fn predicted_auto_correlation_examples() {
        let p = example();
        assert_eq!(auto_correlation_predict(&p, 2, 7).unwrap(), 1);
        assert_eq!(auto_correlation_predict(&p, 1, 0).unwrap(), 3);
        assert_eq!(auto_correlation_predict(&p, 2, 0).unwrap(), 3);
        // Brute force: s_1 = ones at {0,1,2} has no overlap with itself at shift 4,
        // and overlap 2 at shift 14 where Phi(14) = (2, 4) = -(1, 1).
        let s1 = build_crt_ui(&p, 1).unwrap();
        assert_eq!(hamming_cross_correlation(&s1, &s1, 4).unwrap(), 0);
        assert_eq!(auto_correlation_predict(&p, 1, 4).unwrap(), 0);
        assert_eq!(hamming_cross_correlation(&s1, &s1, 14).unwrap(), 2);
        assert_eq!(auto_correlation_predict(&p, 1, 14).unwrap(), 2);
    }

    #[test]
    fn invalid_inputs() {
        assert!(CrtUiParams::new(4, 3, 3, 5).is_err());
        assert!(CrtUiParams::new(3, 3, 4, 5).is_err());
        assert!(CrtUiParams::new(3, 3, 5, 5).is_err());
        assert!(CrtUiParams::new(3, 3, 3, 4).is_err());
        assert!(build_crt_ui(&example(), 0).is_err());
        assert!(build_crt_ui(&example(), 4).is_err());
        assert!(auto_correlation_predict(&example(), 3, 1).is_err());
    }

    #[test]
    fn ui_property_exhaustive() {
        // Cross-correlation at most one for every pair and shift, w up to 12.
        for w in 2..=12usize {
            let p = (w as u64..).find(|&p| is_prime(p)).unwrap();
            let q = ((2 * w - 1) as u64..).find(|&q| gcd(q, p) == 1).unwrap();
            let params = CrtUiParams::new(w, w, p, q).unwrap();
            let seqs: Vec<_> = (1..=w).map(|g| build_crt_ui(&params, g).unwrap()).collect();
            for (a, sa) in seqs.iter().enumerate() {
                assert_eq!(sa.weight(), w);
                for sb in &seqs[a + 1..] {
                    let prof = crate::seqcore::cross_correlation_profile(sa, sb).unwrap();
                    assert!(prof.iter().all(|&h| h <= 1), "w = {w}");
                }
            }
        }
    }
}
