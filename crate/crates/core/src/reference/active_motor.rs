use serde::{Deserialize, Serialize};

use super::curve::{linspace, PairedCurve};
use crate::error::{Error, Result};
use crate::ode::{rk4_step, step_count};

/// Relative distance from β = 1 + γ below which the closed form is treated as singular.
pub const SINGULAR_TOLERANCE: f64 = 1e-8;

/// Three-state motor-unit model: activation at rate B from the resting pool,
/// fatigue of active units at rate F and recovery of fatigued units at rate R.
///
/// Rates are per second; `m0` is the total number of motor units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActiveMotorModel {
    m0: f64,
    f_rate: f64,
    r_rate: f64,
    b_rate: f64,
}

impl ActiveMotorModel {
    pub fn new(m0: f64, f_rate: f64, r_rate: f64, b_rate: f64) -> Result<Self> {
        if !(m0.is_finite() && m0 > 0.0) {
            return Err(Error::InvalidArgument(format!("m0 must be positive, got {m0}")));
        }
        if !(f_rate.is_finite() && f_rate > 0.0) {
            return Err(Error::InvalidArgument(format!("fatigue rate F must be positive, got {f_rate}")));
        }
        if !(r_rate.is_finite() && r_rate >= 0.0 && b_rate.is_finite() && b_rate >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "recovery R and brain effort B must be non-negative, got {r_rate}, {b_rate}"
            )));
        }
        Ok(Self { m0, f_rate, r_rate, b_rate })
    }

    /// Builds the model from β = B/F and γ = R/F.
    pub fn from_ratios(m0: f64, f_rate: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(m0, f_rate, gamma * f_rate, beta * f_rate)
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn f_rate(&self) -> f64 {
        self.f_rate
    }

    pub fn r_rate(&self) -> f64 {
        self.r_rate
    }

    pub fn b_rate(&self) -> f64 {
        self.b_rate
    }

    /// β = B/F.
    pub fn beta_ratio(&self) -> f64 {
        self.b_rate / self.f_rate
    }

    /// γ = R/F.
    pub fn gamma_ratio(&self) -> f64 {
        self.r_rate / self.f_rate
    }

    /// Derivatives of (M_A, M_F, M_uc).
    pub fn rates(&self, state: &[f64; 3]) -> [f64; 3] {
        let [active, fatigued, resting] = *state;
        let activation = self.b_rate * resting;
        let fatigue = self.f_rate * active;
        let recovery = self.r_rate * fatigued;
        [activation - fatigue + recovery, fatigue - recovery, -activation]
    }

    /// RK4 integration from (0, 0, M₀) over `duration` seconds.
    ///
    /// All three pools are integrated; their sum is an invariant of the
    /// system, and RK4 preserves linear invariants up to rounding.
    pub fn simulate(&self, duration: f64, dt: f64) -> Result<ActiveMotorTrajectory> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
        }
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::InvalidArgument(format!("duration must be positive, got {duration}")));
        }
        let n = step_count(duration, dt);
        let h = duration / n as f64;
        let mut traj = ActiveMotorTrajectory {
            m0: self.m0,
            times: Vec::with_capacity(n + 1),
            active: Vec::with_capacity(n + 1),
            fatigued: Vec::with_capacity(n + 1),
            resting: Vec::with_capacity(n + 1),
        };
        let mut y = [0.0, 0.0, self.m0];
        traj.push(0.0, &y);
        for i in 0..n {
            y = rk4_step(|_, s: &[f64; 3]| self.rates(s), i as f64 * h, &y, h);
            let t = if i + 1 == n { duration } else { (i + 1) as f64 * h };
            traj.push(t, &y);
        }
        Ok(traj)
    }

    pub fn is_singular(&self) -> bool {
        let (beta, gamma) = (self.beta_ratio(), self.gamma_ratio());
        (beta - 1.0 - gamma).abs() <= SINGULAR_TOLERANCE * (1.0 + gamma)
    }

    /// Active fraction M_A(t)/M₀ from the two-exponential solution, `t` in seconds.
    pub fn closed_form(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Domain(format!("t must be non-negative, got {t}")));
        }
        if self.is_singular() {
            return Err(Error::SingularParameter(format!(
                "beta = {} equals 1 + gamma = {}; integrate the ODE system instead",
                self.beta_ratio(),
                1.0 + self.gamma_ratio()
            )));
        }
        let (beta, gamma, f) = (self.beta_ratio(), self.gamma_ratio(), self.f_rate);
        let gap = beta - 1.0 - gamma;
        Ok(gamma / (1.0 + gamma) + beta / ((1.0 + gamma) * gap) * (-(1.0 + gamma) * f * t).exp()
            - (beta - gamma) / gap * (-beta * f * t).exp())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActiveMotorTrajectory {
    pub m0: f64,
    /// Seconds.
    pub times: Vec<f64>,
    pub active: Vec<f64>,
    pub fatigued: Vec<f64>,
    pub resting: Vec<f64>,
}

impl ActiveMotorTrajectory {
    fn push(&mut self, t: f64, y: &[f64; 3]) {
        self.times.push(t);
        self.active.push(y[0]);
        self.fatigued.push(y[1]);
        self.resting.push(y[2]);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// |M_A + M_F + M_uc − M₀| at each step.
    pub fn conservation_residuals(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| (self.active[i] + self.fatigued[i] + self.resting[i] - self.m0).abs())
    }

    pub fn max_conservation_residual(&self) -> f64 {
        self.conservation_residuals().fold(0.0, f64::max)
    }
}

/// Dynamic-model capacity at full load, e^{−kt} (value_a), against the
/// motor-unit limit e^{−Ft} (value_b), on a time axis in minutes.
///
/// `k` is per minute and `f_rate` per second.
pub fn mvc_comparison_curve(k: f64, f_rate: f64, duration: f64, samples: usize) -> Result<PairedCurve> {
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::InvalidArgument(format!("duration must be positive, got {duration}")));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let f_per_min = f_rate * 60.0;
    let t = linspace(0.0, duration, samples);
    let value_a = t.iter().map(|&t| (-k * t).exp()).collect();
    let value_b = t.iter().map(|&t| (-f_per_min * t).exp()).collect();
    Ok(PairedCurve { t, value_a, value_b })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitSweepRow {
    pub beta: f64,
    /// Start of the compared window, ten activation time constants 10/(βF), seconds.
    pub transient_end: f64,
    /// max |M_A/M₀ − e^{−Ft}| over [transient_end, 5/F].
    pub max_deviation: f64,
    /// max |M_A/M₀ − (e^{−Ft} − e^{−βFt})| over [0, 5/F].
    pub max_deviation_two_term: f64,
}

/// Closed-form active fraction with γ = 0 for each β, measured against the
/// single-exponential limit e^{−Ft}.
///
/// At t = 0 the active fraction is 0 while e^{−Ft} is 1 for every β, so the
/// comparison against e^{−Ft} starts after the activation transient.
pub fn limit_reduction_sweep(f_rate: f64, betas: &[f64], samples: usize) -> Result<Vec<LimitSweepRow>> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let horizon = 5.0 / f_rate;
    betas
        .iter()
        .map(|&beta| {
            let model = ActiveMotorModel::from_ratios(1.0, f_rate, beta, 0.0)?;
            let transient_end = 10.0 / (beta * f_rate);
            if transient_end >= horizon {
                return Err(Error::InvalidArgument(format!(
                    "beta = {beta} too small: activation transient outlasts 5/F"
                )));
            }
            let mut max_deviation: f64 = 0.0;
            for t in linspace(transient_end, horizon, samples) {
                max_deviation = max_deviation.max((model.closed_form(t)? - (-f_rate * t).exp()).abs());
            }
            let mut max_deviation_two_term: f64 = 0.0;
            for t in linspace(0.0, horizon, samples) {
                let two_term = (-f_rate * t).exp() - (-beta * f_rate * t).exp();
                max_deviation_two_term = max_deviation_two_term.max((model.closed_form(t)? - two_term).abs());
            }
            Ok(LimitSweepRow {
                beta,
                transient_end,
                max_deviation,
                max_deviation_two_term,
            })
        })
        .collect()
}
