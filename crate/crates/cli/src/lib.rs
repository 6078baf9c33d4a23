//! `kuramotoq`: critical couplings, phase-boundary sweeps and ensemble
//! simulations of the classical and quantum Kuramoto models.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;

use clap::Parser;

use args::Cli;
use commands::CliError;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Results go to stdout, diagnostics to stderr.
pub fn run_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = Cli::try_parse_from(args)
        .map_err(CliError::Usage)
        .and_then(commands::run);
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            e.exit_code() as u8
        }
        Err(CliError::ChecksFailed) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
