//! `compcode`: rate curves, thresholds, COMP coding experiments and
//! protocol demos for the BPSK coherent-state multiple access channel.
//!
//! Exit codes: 0 on success, 2 on invalid input, 1 on runtime failure.

mod args;
mod commands;
mod config;
mod error;
mod format;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("compcode: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
