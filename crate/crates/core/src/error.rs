use thiserror::Error;

/// Errors raised by construction, verification and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("moduli {p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },

    #[error("value {value} is outside Z_{modulus}")]
    OutOfRange { value: u64, modulus: u64 },

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid group division: {0}")]
    InvalidDivision(String),

    #[error("invalid schedule sequence set: {0}")]
    InvalidSet(String),

    #[error("probability domain violated: {0}")]
    Domain(String),

    #[error("K = {k} exceeds the precision guard of {limit} for the alternating coupon sum")]
    PrecisionGuard { k: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
