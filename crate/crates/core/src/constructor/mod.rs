//! CRT-UI sequences and multi-channel schedule sequence sets built from them.

mod crt_ui;
mod params;
mod schedule;
mod set;

pub use crt_ui::{auto_correlation_predict, build_crt_ui, CrtUiParams};
pub use params::{choose_w, is_prime, length_upper_bound, m_prime, select_params, ConstructionParams, WChoice};
pub use schedule::{build_array, build_schedule_set, BuildOptions};
pub use set::ScheduleSequenceSet;
