use std::path::PathBuf;

use clap::Args;
use muscle_fatigue::catalog::{Catalog, Region};
use muscle_fatigue::stats::{
    replicate_table2, ComparisonGrid, DEFAULT_GRID_END, DEFAULT_GRID_START, DEFAULT_GRID_STEP,
};

use crate::error::CliResult;
use crate::io::{ensure_dir, require_positive, write_file, write_text};

#[derive(Debug, Args)]
pub struct Table2Args {
    #[arg(long, default_value_t = DEFAULT_GRID_START)]
    grid_start: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_END)]
    grid_end: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    grid_step: f64,
    /// Fatigue rate of the dynamic model, 1/min.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Restrict to one body region (general, shoulder, elbow, hand, back_hip).
    #[arg(long)]
    region: Option<String>,
    /// Alternative model manifest (JSON).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Also render per-region SVG line charts.
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: &Table2Args) -> CliResult {
    require_positive("k", args.k)?;
    let region = args.region.as_deref().map(str::parse::<Region>).transpose()?;
    let catalog = match &args.manifest {
        Some(path) => Catalog::from_path(path)?,
        None => Catalog::builtin(),
    };
    let grid = ComparisonGrid::range(args.grid_start, args.grid_end, args.grid_step, args.k)?;
    let report = replicate_table2(&grid, catalog.list_models(region))?;

    ensure_dir(&args.out)?;
    write_file(&args.out, "table2_report.csv", |w| report.write_csv(w))?;
    for r in report.regions() {
        write_file(&args.out, &format!("curves_{r}.csv"), |w| report.write_region_curves_csv(r, w))?;
        write_file(&args.out, &format!("icc_{r}.csv"), |w| report.write_region_icc_csv(r, w))?;
        if args.svg {
            write_text(&args.out, &format!("curves_{r}.svg"), &report.region_curves_svg(r)?)?;
        }
    }

    println!(
        "grid: {} points from {} to {}, k = {} 1/min",
        grid.len(),
        grid.f_values()[0],
        grid.f_values()[grid.len() - 1],
        grid.k()
    );
    print!("{}", report.render_table());
    println!("{} rows written to {}", report.records.len(), args.out.join("table2_report.csv").display());
    Ok(())
}
