//! Load-driven muscle capacity decay and the associated fatigue index.
//!
//! All times are in minutes, forces in newtons, and the fatigue rate `k` in 1/min.

mod closed_form;
mod profile;
mod simulate;

pub use closed_form::{f_cem_closed_form, fatigue_index_closed_form, met_dynamic, normalized_load_integral};
pub use profile::{LoadProfile, MuscleProfile, DEFAULT_FATIGUE_RATE, PROFILE_CSV_HEADER};
pub use simulate::{
    simulate, simulate_with, FatigueTrajectory, SimulationOptions, TrajectorySummary, DEFAULT_DT,
    DEFAULT_F_CEM_FLOOR, FATIGUE_INDEX_UNIT, TRAJECTORY_CSV_HEADER,
};
