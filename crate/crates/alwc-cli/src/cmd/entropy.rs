//! `entropy-est`: per-letter universal code lengths on doubling blocks as
//! a consistent entropy estimate.

use alwc_core::codec::{entropy_estimate, schedule_k};

use super::parse_source;
use crate::args::EntropyEstArgs;
use crate::csvfmt::float;
use crate::{symio, CliError};

pub const CSV_HEADER: &str = "n,k,H_hat_bits";

pub fn run(a: EntropyEstArgs) -> Result<(), CliError> {
    if a.n_start == 0 || a.n_max < a.n_start {
        return Err(CliError::Usage("need 1 <= n-start <= n-max".into()));
    }
    let stream: Vec<u64> = match (&a.source, &a.input) {
        (Some(spec), None) => parse_source(spec)?.sample(a.seed, a.n_max),
        (None, Some(path)) => symio::read_symbols(path, a.format)?,
        _ => return Err(CliError::Usage("give exactly one of --source or --input".into())),
    };
    let mut sizes = Vec::new();
    let mut n = a.n_start;
    while n <= a.n_max && n <= stream.len() {
        sizes.push(n);
        n = n.saturating_mul(2);
    }
    if sizes.is_empty() {
        return Err(CliError::Data("stream shorter than the first block".into()));
    }
    let estimates = entropy_estimate(&stream, a.tau, &sizes)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for (n, h_hat) in estimates {
        let k = schedule_k(n as u64, a.tau)?;
        csv.push_str(&format!("{},{},{}\n", n, k, float(h_hat)));
    }
    symio::write_text(&a.out, &csv)
}
