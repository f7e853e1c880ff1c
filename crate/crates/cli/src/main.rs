//! `cmc`: command-line front end of the cmc-core toolkit.
//!
//! Exit codes: 0 success, 2 a criteria verdict is false, 3 the solver did
//! not produce a solution, 4 bad input or I/O failure.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use cmc_core::CmcError;

use args::{Cli, Command};
use commands::Outcome;

const VERDICT_FALSE: u8 = 2;
const SOLVER_FAILED: u8 = 3;
const INPUT_ERROR: u8 = 4;

fn error_code(e: &CmcError) -> u8 {
    match e {
        CmcError::NonConvergence { .. } | CmcError::NeedsRefinement { .. } | CmcError::NoRotationalGraph { .. } => {
            SOLVER_FAILED
        }
        _ => INPUT_ERROR,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(INPUT_ERROR),
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match &cli.command {
        Command::Profile(a) => commands::profile(a),
        Command::Criteria(a) => commands::criteria(a),
        Command::SolveRadial(a) => commands::solve_radial(a),
        Command::SolveDisk(a) => commands::solve_disk(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Mesh(a) => commands::mesh(a),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerdictFalse) => ExitCode::from(VERDICT_FALSE),
        Ok(Outcome::Unconverged) => ExitCode::from(SOLVER_FAILED),
        Err(CmcError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
