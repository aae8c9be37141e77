use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use subdiv_cli::commands::STATUS_INPUT_ERROR;
use subdiv_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(STATUS_INPUT_ERROR);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(STATUS_INPUT_ERROR)
        }
    }
}
