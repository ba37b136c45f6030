use num_integer::Integer;

use crate::error::{Error, Result};

/// The bijection `Z_{pq} -> Z_p x Z_q`, `t -> (t mod p, t mod q)`, with its
/// inverse precomputed from one extended-Euclid run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crt {
    p: u64,
    q: u64,
    // q * (q^{-1} mod p) and p * (p^{-1} mod q), both reduced mod pq.
    e_p: u64,
    e_q: u64,
}

impl Crt {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParams(format!("moduli must be positive, got ({p}, {q})")));
        }
        let egcd = (p as i128).extended_gcd(&(q as i128));
        if egcd.gcd != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        let n = (p as i128) * (q as i128);
        // x*p + y*q = 1, so y*q = 1 (mod p) and x*p = 1 (mod q).
        let e_p = ((egcd.y * q as i128) % n + n) % n;
        let e_q = ((egcd.x * p as i128) % n + n) % n;
        Ok(Self { p, q, e_p: e_p as u64, e_q: e_q as u64 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.p * self.q
    }

    pub fn map(&self, t: u64) -> Result<(u64, u64)> {
        if t >= self.modulus() {
            return Err(Error::OutOfRange { value: t, modulus: self.modulus() });
        }
        Ok((t % self.p, t % self.q))
    }

    pub fn inverse(&self, a: u64, b: u64) -> Result<u64> {
        if a >= self.p {
            return Err(Error::OutOfRange { value: a, modulus: self.p });
        }
        if b >= self.q {
            return Err(Error::OutOfRange { value: b, modulus: self.q });
        }
        let n = self.modulus() as u128;
        let t = (a as u128 * self.e_p as u128 + b as u128 * self.e_q as u128) % n;
        Ok(t as u64)
    }

    /// Lays a length-`pq` sequence out as a `p x q` array, entry `t` landing
    /// at `(t mod p, t mod q)`.
    pub fn fold<T: Clone>(&self, seq: &[T]) -> Result<Vec<Vec<T>>> {
        let n = self.modulus() as usize;
        if seq.len() != n {
            return Err(Error::LengthMismatch { left: seq.len(), right: n });
        }
        let mut rows: Vec<Vec<Option<T>>> = vec![vec![None; self.q as usize]; self.p as usize];
        for (t, v) in seq.iter().enumerate() {
            rows[t % self.p as usize][t % self.q as usize] = Some(v.clone());
        }
        Ok(rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.expect("CRT is a bijection")).collect())
            .collect())
    }

    /// Reads a `p x q` array back into a sequence via `s(t) = A(t mod p, t mod q)`.
    pub fn unfold<T: Clone>(&self, array: &[Vec<T>]) -> Result<Vec<T>> {
        if array.len() != self.p as usize || array.iter().any(|r| r.len() != self.q as usize) {
            return Err(Error::InvalidParams(format!(
                "array must be {} x {}",
                self.p, self.q
            )));
        }
        let n = self.modulus() as usize;
        Ok((0..n)
            .map(|t| array[t % self.p as usize][t % self.q as usize].clone())
            .collect())
    }
}

pub fn crt_map(t: u64, p: u64, q: u64) -> Result<(u64, u64)> {
    Crt::new(p, q)?.map(t)
}

pub fn crt_inverse((a, b): (u64, u64), p: u64, q: u64) -> Result<u64> {
    Crt::new(p, q)?.inverse(a, b)
}
