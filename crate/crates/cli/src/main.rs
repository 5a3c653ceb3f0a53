//! `actuator-lab`: command-line front end for the hybrid-actuator modeling
//! laboratory.

mod cli;
mod commands;

use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

use cli::{Cli, Command};
use commands::CliError;

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors; everything else is usage (1)
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result: Result<(), CliError> = match &parsed.command {
        Command::Bend(args) => commands::run_bend(args),
        Command::Force(args) => commands::run_force(args),
        Command::Trajectory(args) => commands::run_trajectory(args),
        Command::ValidateApprox(args) => commands::run_validate(args),
        Command::Calibrate(args) => commands::run_calibrate(args),
        Command::Sweep(args) => commands::run_sweep(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
