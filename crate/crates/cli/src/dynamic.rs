use std::fs;
use std::path::PathBuf;

use clap::Args;
use muscle_fatigue::output::fmt_sig;
use muscle_fatigue::reference::{
    limit_reduction_sweep, mvc_comparison_curve, reservoir_vs_dynamic, ActiveMotorModel, PairedCurve,
    ReservoirModel,
};
use muscle_fatigue::Error;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::{ensure_dir, write_file, write_json};

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Parameter file (JSON); omitted sections take their defaults.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicParams {
    pub active_motor: ActiveMotorParams,
    pub limit_sweep: LimitSweepParams,
    pub mvc_comparison: MvcParams,
    pub reservoir: ReservoirParams,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ActiveMotorParams {
    pub m0: f64,
    /// Per second.
    pub f_rate: f64,
    pub r_rate: f64,
    pub b_rate: f64,
    pub duration_s: f64,
    pub dt_s: f64,
    pub output_stride: usize,
}

impl Default for ActiveMotorParams {
    fn default() -> Self {
        Self {
            m0: 1000.0,
            f_rate: 0.02,
            r_rate: 0.0,
            b_rate: 2.0,
            duration_s: 180.0,
            dt_s: 0.01,
            output_stride: 100,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitSweepParams {
    pub f_rate: f64,
    pub betas: Vec<f64>,
    pub samples: usize,
}

impl Default for LimitSweepParams {
    fn default() -> Self {
        Self {
            f_rate: 0.02,
            betas: vec![1e2, 1e3, 1e4],
            samples: 20_001,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MvcParams {
    /// Per minute.
    pub k: f64,
    /// Per second.
    pub f_rate: f64,
    pub duration_min: f64,
    pub samples: usize,
}

impl Default for MvcParams {
    fn default() -> Self {
        Self {
            k: 1.0,
            f_rate: 0.02,
            duration_min: 3.0,
            samples: 181,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReservoirParams {
    pub s_upper: f64,
    pub alpha: f64,
    pub beta: f64,
    pub relative_load: f64,
    pub k: f64,
    pub duration_min: f64,
    pub dt_min: f64,
}

impl Default for ReservoirParams {
    fn default() -> Self {
        Self {
            s_upper: 1.0,
            alpha: 0.0,
            beta: 1.0,
            relative_load: 0.3,
            k: 1.0,
            duration_min: 3.0,
            dt_min: 0.01,
        }
    }
}

#[derive(Serialize)]
struct Summary {
    conservation_residual_over_m0: f64,
    closed_form_singular: bool,
    ode_vs_closed_form_over_m0: Option<f64>,
    limit_sweep: Vec<(f64, f64)>,
    mvc_max_deviation: f64,
    reservoir_final: f64,
    dynamic_final: f64,
}

pub fn run(args: &CompareArgs) -> CliResult {
    let params: DynamicParams = match &args.params {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            serde_json::from_str(&text)?
        }
        None => DynamicParams::default(),
    };
    if params.active_motor.output_stride == 0 {
        return Err(CliError::new("E_CONFIG", "active_motor.output_stride must be at least 1"));
    }
    ensure_dir(&args.out)?;

    // three-state motor-unit model
    let am = &params.active_motor;
    let model = ActiveMotorModel::new(am.m0, am.f_rate, am.r_rate, am.b_rate)?;
    let traj = model.simulate(am.duration_s, am.dt_s)?;
    let residual = traj.max_conservation_residual() / am.m0;
    println!("active motor: conservation residual {} * M0 (tolerance 1e-9 * M0)", fmt_sig(residual));

    let ode_fraction: Vec<f64> = traj.active.iter().map(|a| a / am.m0).collect();
    let (reference, singular) = match traj.times.iter().map(|&t| model.closed_form(t)).collect() {
        Ok(values) => (values, false),
        Err(Error::SingularParameter(msg)) => {
            println!("notice: {msg}; closed form replaced by the ODE solution");
            (ode_fraction.clone(), true)
        }
        Err(e) => return Err(e.into()),
    };
    let cf_dev = (!singular).then(|| {
        ode_fraction
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    if let Some(d) = cf_dev {
        println!("active motor: max |ODE - closed form| {} * M0", fmt_sig(d));
    }

    write_file(&args.out, "active_motor_states.csv", |w| {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["t_s", "m_a", "m_f", "m_uc", "conservation_residual"])?;
        let residuals: Vec<f64> = traj.conservation_residuals().collect();
        let last = traj.len() - 1;
        for i in (0..traj.len()).filter(|&i| i % am.output_stride == 0 || i == last) {
            wtr.write_record([
                fmt_sig(traj.times[i]),
                fmt_sig(traj.active[i]),
                fmt_sig(traj.fatigued[i]),
                fmt_sig(traj.resting[i]),
                fmt_sig(residuals[i]),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    })?;
    let stride_idx: Vec<usize> = (0..traj.len())
        .filter(|&i| i % am.output_stride == 0 || i == traj.len() - 1)
        .collect();
    let active_curve = PairedCurve {
        t: stride_idx.iter().map(|&i| traj.times[i]).collect(),
        value_a: stride_idx.iter().map(|&i| ode_fraction[i]).collect(),
        value_b: stride_idx.iter().map(|&i| reference[i]).collect(),
    };
    write_file(&args.out, "active_motor_closed_form.csv", |w| active_curve.write_csv(w))?;

    // limit reduction γ = 0, β → ∞
    let ls = &params.limit_sweep;
    let rows = limit_reduction_sweep(ls.f_rate, &ls.betas, ls.samples)?;
    println!("limit sweep (gamma = 0, F = {} 1/s):", fmt_sig(ls.f_rate));
    println!("  {:>10} {:>14}", "beta", "max_deviation");
    for r in &rows {
        println!("  {:>10} {:>14}", fmt_sig(r.beta), fmt_sig(r.max_deviation));
    }
    write_file(&args.out, "limit_sweep.csv", |w| {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["beta", "transient_end_s", "max_deviation", "max_deviation_two_term"])?;
        for r in &rows {
            wtr.write_record([
                fmt_sig(r.beta),
                fmt_sig(r.transient_end),
                fmt_sig(r.max_deviation),
                fmt_sig(r.max_deviation_two_term),
            ])?;
        }
        wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    })?;

    // full-effort comparison
    let mv = &params.mvc_comparison;
    let mvc_curve = mvc_comparison_curve(mv.k, mv.f_rate, mv.duration_min, mv.samples)?;
    let mvc_dev = mvc_curve.max_abs_deviation();
    println!(
        "full effort: k = {} 1/min vs F = {} 1/s, max deviation {}",
        fmt_sig(mv.k),
        fmt_sig(mv.f_rate),
        fmt_sig(mvc_dev)
    );
    write_file(&args.out, "mvc_comparison.csv", |w| mvc_curve.write_csv(w))?;

    // reservoir capacity against the dynamic model
    let rp = &params.reservoir;
    let reservoir = ReservoirModel::new(rp.s_upper, rp.alpha, rp.beta)?;
    let rcurve = reservoir_vs_dynamic(&reservoir, rp.relative_load, rp.k, rp.duration_min, rp.dt_min)?;
    let last = rcurve.len() - 1;
    println!(
        "reservoir vs dynamic at t = {} min: {} vs {}",
        fmt_sig(rcurve.t[last]),
        fmt_sig(rcurve.value_a[last]),
        fmt_sig(rcurve.value_b[last])
    );
    write_file(&args.out, "reservoir_vs_dynamic.csv", |w| rcurve.write_csv(w))?;

    write_json(
        &args.out,
        "summary.json",
        &Summary {
            conservation_residual_over_m0: residual,
            closed_form_singular: singular,
            ode_vs_closed_form_over_m0: cf_dev,
            limit_sweep: rows.iter().map(|r| (r.beta, r.max_deviation)).collect(),
            mvc_max_deviation: mvc_dev,
            reservoir_final: rcurve.value_a[last],
            dynamic_final: rcurve.value_b[last],
        },
    )?;
    Ok(())
}
