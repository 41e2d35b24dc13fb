//! Analytic solutions of the capacity and fatigue-index equations.

use super::profile::{LoadProfile, MuscleProfile};
use crate::error::{Error, Result};

/// F(t) = ∫₀ᵗ F_load(u)/MVC du, the load history normalised by MVC.
pub fn normalized_load_integral(profile: &LoadProfile, muscle: &MuscleProfile, t: f64) -> Result<f64> {
    Ok(profile.integral(t)? / muscle.mvc())
}

/// Current exertable maximum force MVC·exp(−k·F(t)), in newtons.
pub fn f_cem_closed_form(profile: &LoadProfile, muscle: &MuscleProfile, t: f64) -> Result<f64> {
    let f = normalized_load_integral(profile, muscle, t)?;
    Ok(muscle.mvc() * (-muscle.k() * f).exp())
}

/// Fatigue index U(t) = (e^{2kF(t)} − 1)/(2k), using U(0) = 0.
pub fn fatigue_index_closed_form(profile: &LoadProfile, muscle: &MuscleProfile, t: f64) -> Result<f64> {
    let f = normalized_load_integral(profile, muscle, t)?;
    Ok(fatigue_index_from_integral(f, muscle.k()))
}

pub(crate) fn fatigue_index_from_integral(f: f64, k: f64) -> f64 {
    (2.0 * k * f).exp_m1() / (2.0 * k)
}

/// Maximum endurance time −ln(f)/(k·f) in minutes for a constant relative load `f_mvc`.
pub fn met_dynamic(f_mvc: f64, k: f64) -> Result<f64> {
    if !(f_mvc > 0.0 && f_mvc <= 1.0) {
        return Err(Error::Domain(format!("f_mvc must lie in (0, 1], got {f_mvc}")));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    // -ln(1) is -0.0; report a clean zero
    Ok((-f_mvc.ln() / (k * f_mvc)).max(0.0))
}
