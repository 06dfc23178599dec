//! CLI and experiment harness for the almost-lossless weak coding toolkit.
//!
//! Subcommands: `encode`, `decode`, `rd`, `experiment`, `radius`,
//! `entropy-est`. Every command is deterministic given its flags and seed:
//! reruns produce byte-identical CSV and container files.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/format error.

mod args;
mod cmd;
mod csvfmt;
mod symio;

use clap::error::ErrorKind;
use clap::Parser;

/// Command failures, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or malformed spec strings on the command line (exit 1).
    Usage(String),
    /// Bad file contents, codec format violations, IO failures (exit 2).
    Data(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(format!("io error: {e}"))
    }
}

impl From<alwc_core::Error> for CliError {
    fn from(e: alwc_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<alwc_core::codec::CodecError> for CliError {
    fn from(e: alwc_core::codec::CodecError) -> Self {
        CliError::Data(e.to_string())
    }
}

pub fn run() -> i32 {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let _ = e.print();
            return 1;
        }
    };
    match cmd::dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
