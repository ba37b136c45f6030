use num_integer::binomial;

use crate::error::{Error, Result};

/// Largest K for which the alternating sum is evaluated in `f64`.
pub const MAX_COUPON_NODES: usize = 40;

/// Per-slot reception model of one node: each of its K-1 neighbours gets a
/// packet through with probability `success`, nobody with `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouponModel {
    pub nodes: usize,
    pub success: f64,
    pub null: f64,
}

impl CouponModel {
    pub fn new(nodes: usize, success: f64) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::Domain(format!("need K >= 2, got {nodes}")));
        }
        let total = (nodes - 1) as f64 * success;
        if !(success > 0.0) || total > 1.0 + 1e-12 {
            return Err(Error::Domain(format!("need 0 < (K - 1) P <= 1, got {total}")));
        }
        Ok(Self { nodes, success, null: (1.0 - total).max(0.0) })
    }

    /// Model at the single-channel optimum `P* = (K-1)^{K-1} / K^K`.
    pub fn optimal(nodes: usize) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::Domain(format!("need K >= 2, got {nodes}")));
        }
        let k = nodes as f64;
        let p_star = ((k - 1.0) / k).powi(nodes as i32 - 1) / k;
        Self::new(nodes, p_star)
    }
}

/// `P(Y <= l)` for collecting all K-1 equiprobable coupons:
/// `1 - sum_{i=0}^{K-2} (-1)^{K-2-i} C(K-1, i) [((K-1-i) p0 + i)/(K-1)]^l`.
pub fn coupon_cdf(model: &CouponModel, slots: u64) -> Result<f64> {
    let k = model.nodes;
    if k > MAX_COUPON_NODES {
        return Err(Error::PrecisionGuard { k, limit: MAX_COUPON_NODES });
    }
    let n = (k - 1) as u64;
    if slots < n {
        return Ok(0.0);
    }
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for i in 0..n {
        let sign = if (n - 1 - i) % 2 == 0 { 1.0 } else { -1.0 };
        let base = ((n - i) as f64 * model.null + i as f64) / n as f64;
        let term = sign * binomial(n, i) as f64 * pow_u64(base, slots);
        // Kahan-compensated accumulation.
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok((1.0 - sum).clamp(0.0, 1.0))
}

fn pow_u64(base: f64, exp: u64) -> f64 {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(exp as f64),
    }
}

/// `P(X <= l) = P(Y <= l)^K`, treating the K receivers as independent.
pub fn group_cdf(model: &CouponModel, slots: u64) -> Result<f64> {
    Ok(coupon_cdf(model, slots)?.powi(model.nodes as i32))
}

/// Smallest `l` with `group_cdf(l) >= target`.
pub fn frame_length(model: &CouponModel, target: f64) -> Result<u64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain(format!("target must lie in (0, 1), got {target}")));
    }
    let mut hi = 1u64;
    while group_cdf(model, hi)? < target {
        hi = hi.checked_mul(2).ok_or_else(|| Error::Domain("frame length overflow".into()))?;
    }
    let mut lo = hi / 2;
    // Invariant: cdf(lo) < target <= cdf(hi), with cdf(0) = 0.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if group_cdf(model, mid)? >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
