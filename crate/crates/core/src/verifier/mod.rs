//! Decides whether a set meets the all-to-all delivery requirement for every
//! offset vector, and evaluates the lower-bound machinery.

mod appendix;
mod bits;
mod blocking;
mod bounds;
mod check;
mod report;

pub use appendix::appendix_f;
pub use blocking::{b_sequence, blocking_run, BlockingTrace, RecursionForm};
pub use bounds::{lower_bound, lower_bound_with, ratio_table, BoundReport, RatioCell};
pub use check::{
    check_pair_conservative, check_pair_exhaustive, pair_succeeds, undelivered_pair, verify_set, Mode,
    DEFAULT_BUDGET,
};
pub use report::{Method, Verdict, VerificationReport, Witness};
