use std::process::ExitCode;

use clap::Parser;
use stokeslab_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("stokeslab: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    match run(&config) {
        Ok(outcome) => {
            print!("{}", outcome.message);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("stokeslab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
