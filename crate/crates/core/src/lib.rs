//! Dynamic muscle fatigue toolkit.
//!
//! * [`fatigue`]: capacity decay and fatigue index under arbitrary load histories,
//!   closed forms, RK4 simulation and maximum endurance time.
//! * [`catalog`]: published static endurance-time models, loaded from a JSON manifest.
//! * [`stats`]: Pearson and one-way intraclass correlation, and the harness that
//!   compares the dynamic endurance time against every catalog model.
//! * [`reference`]: comparison models (reservoir capacity model and the
//!   three-state motor-unit model).

pub mod catalog;
pub mod error;
pub mod fatigue;
pub mod ode;
pub mod output;
pub mod reference;
pub mod stats;

pub use error::{Error, Result};
