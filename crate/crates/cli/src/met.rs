use std::path::PathBuf;

use clap::Args;
use muscle_fatigue::catalog::Catalog;
use muscle_fatigue::fatigue::met_dynamic;
use muscle_fatigue::output::fmt_sig;

use crate::error::{CliError, CliResult};
use crate::io::require_positive;

#[derive(Debug, Args)]
pub struct MetArgs {
    /// Relative load f_MVC in (0, 1].
    #[arg(long)]
    fmvc: f64,
    /// Catalog model id, or `dynamic`.
    #[arg(long, default_value = "dynamic")]
    model: String,
    /// Fatigue rate for the dynamic model, 1/min.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Alternative model manifest (JSON).
    #[arg(long)]
    manifest: Option<PathBuf>,
}

pub fn run(args: &MetArgs) -> CliResult {
    let met = if args.model == "dynamic" {
        require_positive("k", args.k)?;
        met_dynamic(args.fmvc, args.k)?
    } else {
        let catalog = match &args.manifest {
            Some(path) => Catalog::from_path(path)?,
            None => Catalog::builtin(),
        };
        let model = catalog.get(&args.model).ok_or_else(|| {
            CliError::new(
                "E_ARG",
                format!("unknown model `{}`; see the ids in the model manifest", args.model),
            )
        })?;
        model.evaluate(args.fmvc)?
    };
    println!("{} f_mvc={} met_min={}", args.model, fmt_sig(args.fmvc), fmt_sig(met));
    Ok(())
}
