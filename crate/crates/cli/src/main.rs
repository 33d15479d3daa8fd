use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = bfc_cli::Cli::parse();
    match bfc_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
