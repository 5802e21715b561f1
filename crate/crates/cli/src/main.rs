use std::process::ExitCode;

use barystable_cli::{exit_code, run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("barystable: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
