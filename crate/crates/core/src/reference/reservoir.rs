use serde::{Deserialize, Serialize};

use super::curve::PairedCurve;
use crate::error::{Error, Result};
use crate::ode::{rk4_step, step_count};

/// Capacity reservoir: dS⁰/dt = α(Sˡ − S⁰) − βS, with S⁰ kept in [0, Sˡ].
///
/// `alpha` and `beta` are per minute; forces share whatever unit `s_upper` uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReservoirModel {
    s_upper: f64,
    alpha: f64,
    beta: f64,
}

impl Default for ReservoirModel {
    /// Normalised capacity, no recovery, unit decay rate.
    fn default() -> Self {
        Self {
            s_upper: 1.0,
            alpha: 0.0,
            beta: 1.0,
        }
    }
}

impl ReservoirModel {
    pub fn new(s_upper: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(s_upper.is_finite() && s_upper > 0.0) {
            return Err(Error::InvalidArgument(format!("s_upper must be positive, got {s_upper}")));
        }
        if !(alpha.is_finite() && alpha >= 0.0 && beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha and beta must be non-negative, got {alpha}, {beta}"
            )));
        }
        Ok(Self { s_upper, alpha, beta })
    }

    pub fn s_upper(&self) -> f64 {
        self.s_upper
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rate(&self, s0: f64, s: f64) -> f64 {
        self.alpha * (self.s_upper - s0) - self.beta * s
    }

    /// One RK4 step of length `dt` holding the muscle force `s` fixed.
    pub fn step(&self, s0: f64, s: f64, dt: f64) -> Result<f64> {
        if !(0.0..=self.s_upper).contains(&s0) {
            return Err(Error::InvalidArgument(format!(
                "capacity {s0} outside [0, {}]",
                self.s_upper
            )));
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidArgument(format!("force must be non-negative, got {s}")));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
        }
        let next = rk4_step(|_, y: &[f64; 1]| [self.rate(y[0], s)], 0.0, &[s0], dt);
        Ok(next[0].clamp(0.0, self.s_upper))
    }

    /// Capacity history from `s0` under a force profile `force(t)`.
    pub fn simulate(
        &self,
        s0: f64,
        force: impl Fn(f64) -> f64,
        duration: f64,
        dt: f64,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::InvalidArgument(format!("duration must be positive, got {duration}")));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
        }
        let n = step_count(duration, dt);
        let h = duration / n as f64;
        let mut times = vec![0.0];
        let mut caps = vec![s0];
        let mut y = s0;
        for i in 0..n {
            let t = i as f64 * h;
            // force sampled at the step midpoint
            y = self.step(y, force(t + 0.5 * h), h)?;
            times.push(if i + 1 == n { duration } else { (i + 1) as f64 * h });
            caps.push(y);
        }
        Ok((times, caps))
    }
}

/// Reservoir capacity S⁰/Sˡ (value_a) against the dynamic model's F_cem/MVC = e^{−kCt}
/// (value_b) for a constant relative load `C`, times in minutes.
pub fn reservoir_vs_dynamic(
    reservoir: &ReservoirModel,
    relative_load: f64,
    k: f64,
    duration: f64,
    dt: f64,
) -> Result<PairedCurve> {
    if !(relative_load.is_finite() && (0.0..=1.0).contains(&relative_load)) {
        return Err(Error::InvalidArgument(format!(
            "relative load must lie in [0, 1], got {relative_load}"
        )));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    let s = relative_load * reservoir.s_upper();
    let (t, caps) = reservoir.simulate(reservoir.s_upper(), |_| s, duration, dt)?;
    let value_a = caps.iter().map(|c| c / reservoir.s_upper()).collect();
    let value_b = t.iter().map(|&t| (-k * relative_load * t).exp()).collect();
    Ok(PairedCurve { t, value_a, value_b })
}
