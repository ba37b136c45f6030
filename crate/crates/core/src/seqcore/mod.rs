//! Symbols, periodic sequences, the CRT correspondence, Hamming correlations
//! and group divisions.

mod correlation;
mod crt;
mod division;
mod sequence;

pub use correlation::{cross_correlation_profile, hamming_cross_correlation};
pub use crt::{crt_inverse, crt_map, Crt};
pub use division::GroupDivision;
pub use sequence::{
    cyclic_shift, BinarySequence, Channel, OffsetVector, ScheduleSequence, Symbol,
};
