use crate::error::{Error, Result};

/// Piecewise `F(x) = x/d + (1/x) * sum_{i=2..d} 1/i` on `x in (sqrt(d-1), sqrt(d)]`.
pub fn appendix_f(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("F needs x > 0, got {x}")));
    }
    let mut d = (x * x).ceil().max(1.0) as u64;
    // Guard the interval ends against rounding in x * x.
    while d > 1 && ((d - 1) as f64).sqrt() >= x {
        d -= 1;
    }
    while (d as f64).sqrt() < x {
        d += 1;
    }
    let harmonic: f64 = (2..=d).map(|i| 1.0 / i as f64).sum();
    Ok(x / d as f64 + harmonic / x)
}
