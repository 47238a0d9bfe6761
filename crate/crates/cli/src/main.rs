use std::process::ExitCode;

use clap::Parser;
use harmonic_zeros_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("harmonic-zeros: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
