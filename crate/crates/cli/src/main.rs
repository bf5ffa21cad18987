use std::process::ExitCode;

use clap::Parser;
use sadprec_cli::{run, CliError};

fn main() -> ExitCode {
    let cli = sadprec_cli::cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("sadprec: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("sadprec: {e}");
            ExitCode::from(1)
        }
    }
}
