use std::process::ExitCode;

use clap::Parser;

use weylgate::cli::{self, Cli, CliError};

fn main() -> ExitCode {
    let args = Cli::parse();
    match cli::execute(&args) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) | Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
