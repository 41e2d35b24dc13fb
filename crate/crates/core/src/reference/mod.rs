//! Comparison fatigue models used for dynamic validation.

mod active_motor;
mod curve;
mod reservoir;

pub use active_motor::{
    limit_reduction_sweep, mvc_comparison_curve, ActiveMotorModel, ActiveMotorTrajectory, LimitSweepRow,
    SINGULAR_TOLERANCE,
};
pub use curve::{PairedCurve, CURVE_CSV_HEADER};
pub use reservoir::{reservoir_vs_dynamic, ReservoirModel};
