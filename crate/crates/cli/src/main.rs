mod args;
mod commands;
mod document;
mod source;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit 2 for bad arguments or an oversized oracle input, 1 for everything else.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Verify(a) => commands::verify(a),
        Command::BenchOrdering(a) => commands::bench_ordering(a),
        Command::WorkReport(a) => commands::work_report_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
