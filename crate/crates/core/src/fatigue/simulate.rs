use std::io::Write;

use serde::Serialize;

use super::profile::{LoadProfile, MuscleProfile};
use crate::error::{Error, Result};
use crate::ode::{rk4_step, step_count};
use crate::output::fmt_sig;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_F_CEM_FLOOR: f64 = 1e-12;

/// Unit label attached to the fatigue index in output metadata.
pub const FATIGUE_INDEX_UNIT: &str = "min";

pub const TRAJECTORY_CSV_HEADER: [&str; 4] = ["time_min", "f_cem_N", "u_index", "f_integral"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    /// Largest integration step, in minutes.
    pub dt: f64,
    /// Lower clamp on F_cem (N) so the fatigue-index rate stays finite.
    pub f_cem_floor: f64,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            f_cem_floor: DEFAULT_F_CEM_FLOOR,
        }
    }
}

/// Sampled solution of the capacity / fatigue-index system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FatigueTrajectory {
    pub times: Vec<f64>,
    pub f_cem: Vec<f64>,
    pub u: Vec<f64>,
    pub f_integral: Vec<f64>,
    /// Time at which the load first reached the remaining capacity; the
    /// trajectory ends there.
    pub exhausted_at: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectorySummary {
    pub final_time: f64,
    pub final_f_cem: f64,
    pub final_u: f64,
    pub u_unit: &'static str,
    pub exhausted_at: Option<f64>,
}

impl FatigueTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Index of the point recorded exactly at `t`, if any.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let i = self.times.partition_point(|&x| x < t);
        (i < self.times.len() && self.times[i] == t).then_some(i)
    }

    pub fn summary(&self) -> TrajectorySummary {
        let last = self.len() - 1;
        TrajectorySummary {
            final_time: self.times[last],
            final_f_cem: self.f_cem[last],
            final_u: self.u[last],
            u_unit: FATIGUE_INDEX_UNIT,
            exhausted_at: self.exhausted_at,
        }
    }

    /// Writes every `stride`-th row; the final row is always included.
    pub fn write_csv<W: Write>(&self, writer: W, stride: usize) -> Result<()> {
        if stride == 0 {
            return Err(Error::InvalidArgument("output stride must be at least 1".into()));
        }
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(TRAJECTORY_CSV_HEADER)?;
        let last = self.len() - 1;
        for i in (0..self.len()).filter(|&i| i % stride == 0 || i == last) {
            wtr.write_record([
                fmt_sig(self.times[i]),
                fmt_sig(self.f_cem[i]),
                fmt_sig(self.u[i]),
                fmt_sig(self.f_integral[i]),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }
}

pub fn simulate(profile: &LoadProfile, muscle: &MuscleProfile, dt: f64) -> Result<FatigueTrajectory> {
    simulate_with(profile, muscle, &SimulationOptions { dt, ..Default::default() })
}

/// Integrates dF_cem/dt = −k·(F_cem/MVC)·F_load and dU/dt = (MVC/F_cem)·(F_load/F_cem)
/// with fixed-step RK4.
///
/// Each profile segment is split into equal steps no longer than `dt`, so every
/// sample time is hit exactly and no step straddles a change of slope. When the
/// load reaches the remaining capacity the crossing is located by bisection on
/// the step length and the trajectory ends there.
pub fn simulate_with(
    profile: &LoadProfile,
    muscle: &MuscleProfile,
    options: &SimulationOptions,
) -> Result<FatigueTrajectory> {
    let SimulationOptions { dt, f_cem_floor } = *options;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    if !(f_cem_floor.is_finite() && f_cem_floor > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "F_cem floor must be positive, got {f_cem_floor}"
        )));
    }

    let (mvc, k) = (muscle.mvc(), muscle.k());
    let mut traj = FatigueTrajectory {
        times: vec![0.0],
        f_cem: vec![mvc],
        u: vec![0.0],
        f_integral: vec![0.0],
        exhausted_at: None,
    };
    if exhausted(profile.loads()[0], mvc) {
        traj.exhausted_at = Some(0.0);
        return Ok(traj);
    }

    let mut state = [mvc, 0.0];
    let times = profile.times();
    for seg in 0..times.len() - 1 {
        let (start, end) = (times[seg], times[seg + 1]);
        let rhs = |t: f64, y: &[f64; 2]| {
            let load = profile.segment_load(seg, t);
            let fcem = y[0].max(f_cem_floor);
            [-k * fcem / mvc * load, mvc * load / (fcem * fcem)]
        };
        let step = |t: f64, y: &[f64; 2], h: f64| {
            let mut next = rk4_step(rhs, t, y, h);
            next[0] = next[0].max(f_cem_floor);
            next
        };

        let n = step_count(end - start, dt);
        let h = (end - start) / n as f64;
        for j in 0..n {
            let t = start + j as f64 * h;
            let t_next = if j + 1 == n { end } else { start + (j + 1) as f64 * h };
            let h_j = t_next - t;
            let next = step(t, &state, h_j);

            if exhausted(profile.segment_load(seg, t_next), next[0]) {
                // g(s) = F_cem(t + s) − F_load(t + s) is positive at 0 and non-positive at h_j
                let (mut lo, mut hi) = (0.0, h_j);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let trial = step(t, &state, mid);
                    if exhausted(profile.segment_load(seg, t + mid), trial[0]) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                let t_ex = t + hi;
                let at = step(t, &state, hi);
                push(&mut traj, profile, mvc, t_ex, at)?;
                traj.exhausted_at = Some(t_ex);
                return Ok(traj);
            }

            state = next;
            push(&mut traj, profile, mvc, t_next, state)?;
        }
    }
    Ok(traj)
}

fn exhausted(load: f64, f_cem: f64) -> bool {
    load > 0.0 && load >= f_cem
}

fn push(traj: &mut FatigueTrajectory, profile: &LoadProfile, mvc: f64, t: f64, y: [f64; 2]) -> Result<()> {
    traj.times.push(t);
    traj.f_cem.push(y[0]);
    traj.u.push(y[1]);
    traj.f_integral.push(profile.integral(t)? / mvc);
    Ok(())
}
