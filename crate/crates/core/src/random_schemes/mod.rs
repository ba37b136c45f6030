//! Random-access baselines: per-slot success probabilities, their optimal
//! transmit probabilities, and the coupon-collector frame length.

mod coupon;
mod optimize;
mod success;

pub use coupon::{coupon_cdf, frame_length, group_cdf, CouponModel, MAX_COUPON_NODES};
pub use optimize::{golden_section_max, optimize_random, Optimum, Scheme};
pub use success::{p_success_assign_t, p_success_general, AssignTRandomParams, GeneralRandomParams};
