use std::process::ExitCode;

use clap::Parser;
use css4code_cli::{run, Cli, Status};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::Diagnostics) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
