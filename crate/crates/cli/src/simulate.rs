use std::path::PathBuf;

use clap::Args;
use muscle_fatigue::fatigue::{simulate_with, LoadProfile, MuscleProfile, SimulationOptions, DEFAULT_DT};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::{ensure_dir, require_positive, write_file, write_json};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Load profile CSV with header `time_min,load_N`.
    #[arg(long)]
    profile: PathBuf,
    /// Maximum voluntary contraction, N.
    #[arg(long)]
    mvc: f64,
    /// Fatigue rate, 1/min.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Integration step, min.
    #[arg(long, default_value_t = DEFAULT_DT)]
    dt: f64,
    /// Write every n-th integration step to the trajectory CSV.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct Summary {
    mvc: f64,
    k: f64,
    dt: f64,
    final_time: f64,
    final_f_cem: f64,
    final_u: f64,
    u_unit: &'static str,
    exhausted_at: Option<f64>,
}

pub fn run(args: &SimulateArgs) -> CliResult {
    require_positive("mvc", args.mvc)?;
    require_positive("k", args.k)?;
    require_positive("dt", args.dt)?;
    if args.stride == 0 {
        return Err(CliError::new("E_ARG", "--stride must be at least 1"));
    }
    let muscle = MuscleProfile::new(args.mvc, args.k)?;
    let profile = LoadProfile::from_path(&args.profile)?;
    let options = SimulationOptions {
        dt: args.dt,
        ..Default::default()
    };
    let traj = simulate_with(&profile, &muscle, &options)?;

    ensure_dir(&args.out)?;
    let csv = write_file(&args.out, "trajectory.csv", |w| traj.write_csv(w, args.stride))?;
    let s = traj.summary();
    let summary = Summary {
        mvc: args.mvc,
        k: args.k,
        dt: args.dt,
        final_time: s.final_time,
        final_f_cem: s.final_f_cem,
        final_u: s.final_u,
        u_unit: s.u_unit,
        exhausted_at: s.exhausted_at,
    };
    let json = write_json(&args.out, "summary.json", &summary)?;

    println!(
        "final_f_cem = {:.6} N, final_u = {:.6} {}, exhausted_at = {}",
        s.final_f_cem,
        s.final_u,
        s.u_unit,
        s.exhausted_at.map_or("none".to_string(), |t| format!("{t:.6} min"))
    );
    println!("wrote {} and {}", csv.display(), json.display());
    Ok(())
}
