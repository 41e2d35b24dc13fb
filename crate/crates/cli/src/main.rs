mod dynamic;
mod error;
mod io;
mod met;
mod simulate;
mod table2;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};

/// Dynamic muscle fatigue: simulation, endurance time and model comparison.
#[derive(Debug, Parser)]
#[command(name = "muscle-fatigue", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate capacity and fatigue index over a load profile.
    Simulate(simulate::SimulateArgs),
    /// Maximum endurance time for a relative load.
    Met(met::MetArgs),
    /// Compare the dynamic endurance time against the static model catalog.
    #[command(name = "validate-table2")]
    ValidateTable2(table2::Table2Args),
    /// Motor-unit, limit-reduction and reservoir comparisons.
    CompareDynamic(dynamic::CompareArgs),
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Simulate(args) => simulate::run(&args),
        Command::Met(args) => met::run(&args),
        Command::ValidateTable2(args) => table2::run(&args),
        Command::CompareDynamic(args) => dynamic::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.to_string();
            let summary: Vec<&str> = detail
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("{}", CliError::new("E_ARG", summary.join(" ").trim_start_matches("error: ")));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
