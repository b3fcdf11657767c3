//! Command-line surface over the segment calculus: JSON in, JSON (or a
//! short text summary) out, with scriptable exit codes.
//!
//! Exit codes: 0 = success / certified, 1 = usage or schema error,
//! 2 = mathematical counterexample found.

mod args;
mod commands;
mod io;
mod report;
mod suite;

use std::process::ExitCode;

pub use args::{Cli, Command};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_COUNTEREXAMPLE: u8 = 2;

pub fn run() -> ExitCode {
    let cli = match args::parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders its own help/version through the error path
            let is_help = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if is_help {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match commands::dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("extbranch: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
