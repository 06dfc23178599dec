mod codec_io;
mod entropy;
mod experiment;
mod radius;
mod rd;

use alwc_core::dist::{Envelope, Pmf};

use crate::args::Command;
use crate::CliError;

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Encode(a) => codec_io::encode(a),
        Command::Decode(a) => codec_io::decode(a),
        Command::Rd(a) => rd::run(a),
        Command::Experiment(a) => experiment::run(a),
        Command::Radius(a) => radius::run(a),
        Command::EntropyEst(a) => entropy::run(a),
    }
}

/// Spec strings arrive on the command line, so parse failures are usage
/// errors.
pub fn parse_source(spec: &str) -> Result<Pmf, CliError> {
    alwc_core::parse::parse_pmf(spec).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn parse_envelope(spec: &str) -> Result<Envelope, CliError> {
    alwc_core::parse::parse_envelope(spec).map_err(|e| CliError::Usage(e.to_string()))
}

/// Comma-separated ascending positive integers.
pub fn parse_n_grid(s: &str) -> Result<Vec<u64>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let v: u64 = item
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad grid entry `{item}`")))?;
        if v == 0 {
            return Err(CliError::Usage("grid entries must be positive".into()));
        }
        if let Some(&last) = out.last() {
            if v <= last {
                return Err(CliError::Usage("grid must be strictly ascending".into()));
            }
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty grid".into()));
    }
    Ok(out)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|item| {
            item.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number `{item}`")))
        })
        .collect()
}
