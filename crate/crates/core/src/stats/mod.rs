//! Agreement statistics and the static-validation comparison harness.

mod comparison;
mod correlation;

pub use comparison::{
    replicate_table2, ComparisonGrid, ComparisonReport, ModelComparison, Outcome, DEFAULT_GRID_END,
    DEFAULT_GRID_START, DEFAULT_GRID_STEP, REPORT_CSV_HEADER,
};
pub use correlation::{icc, icc_one_way, pearson_r};
