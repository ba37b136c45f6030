//! Deterministic schedule sequences for multichannel rendezvous with
//! guaranteed neighbour discovery, plus the random-access baselines they are
//! compared against.

pub mod constructor;
pub mod error;
pub mod random_schemes;
pub mod seqcore;
pub mod simulator;
pub mod verifier;

pub use error::{Error, Result};
