use crate::error::{Error, Result};

use super::BinarySequence;

/// `H(tau) = sum_t s1(t) * s2((t + tau) mod L)`.
pub fn hamming_cross_correlation(s1: &BinarySequence, s2: &BinarySequence, tau: usize) -> Result<usize> {
    let n = s1.len();
    if s2.len() != n {
        return Err(Error::LengthMismatch { left: n, right: s2.len() });
    }
    if n == 0 {
        return Ok(0);
    }
    if tau >= n {
        return Err(Error::OutOfRange { value: tau as u64, modulus: n as u64 });
    }
    Ok(s1.ones().filter(|&t| s2.get((t + tau) % n)).count())
}

/// `H(tau)` for every `tau` in `Z_L`, built from the support of both sequences
/// in `O(w1 * w2 + L)`.
pub fn cross_correlation_profile(s1: &BinarySequence, s2: &BinarySequence) -> Result<Vec<usize>> {
    let n = s1.len();
    if s2.len() != n {
        return Err(Error::LengthMismatch { left: n, right: s2.len() });
    }
    let mut profile = vec![0usize; n];
    let ones2: Vec<usize> = s2.ones().collect();
    for t in s1.ones() {
        for &u in &ones2 {
            profile[(u + n - t) % n] += 1;
        }
    }
    Ok(profile)
}
