//! Command-line driver: problem generation, single solves, parameter sweeps,
//! spectrum export and the Stokes benchmark table.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod error;
pub mod grid;
pub mod record;

use std::io::Write;

use cli::{Cli, Command};
pub use error::{CliError, CliResult};
pub use record::BenchRecord;

/// Run one command; `Ok(false)` means some requested solve did not converge.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<bool> {
    match &cli.command {
        Command::Generate(args) => commands::generate(args, out).map(|_| true),
        Command::Solve(args) => commands::solve(args, out),
        Command::Sweep(args) => commands::sweep(args, out),
        Command::Spectrum(args) => commands::spectrum(args, out).map(|_| true),
        Command::Bench(args) => commands::bench(args, out),
    }
}
