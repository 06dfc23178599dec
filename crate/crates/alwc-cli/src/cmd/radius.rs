//! `radius`: per-block-length redundancy bounds, admissibility, and the
//! gain/no-gain classification for an envelope class.
//!
//! Power-tail envelopes can push the integral lower bound above the scan
//! upper bound (the closed-form bound carries tail-regularity conditions
//! that member of the family does not meet); those rows carry a warning
//! instead of failing the run.

use alwc_core::codec::schedule_k;
use alwc_core::dist::Envelope;
use alwc_core::radius::{
    classify_regime, envelope_radius_lower, envelope_radius_upper, finite_alphabet_radius_bounds,
};

use super::{parse_envelope, parse_n_grid};
use crate::args::RadiusArgs;
use crate::csvfmt::float;
use crate::{symio, CliError};

pub const CSV_HEADER: &str =
    "n,k_n,u_star,lower_bits,upper_bits,restricted_upper_bits,ratio_proxy,admissible,regime,warning";

enum Schedule {
    Tau(f64),
    UStar,
    SqrtUStar,
    UStarPlus(u64),
    Fixed(u64),
}

fn parse_schedule(s: &str) -> Result<Schedule, CliError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("tau:") {
        let tau: f64 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad schedule exponent `{rest}`")))?;
        return Ok(Schedule::Tau(tau));
    }
    if let Some(rest) = s.strip_prefix("u-star-plus:") {
        let add: u64 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad schedule offset `{rest}`")))?;
        return Ok(Schedule::UStarPlus(add));
    }
    if let Some(rest) = s.strip_prefix("fixed:") {
        let k: u64 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad fixed size `{rest}`")))?;
        return Ok(Schedule::Fixed(k));
    }
    match s {
        "u-star" => Ok(Schedule::UStar),
        "sqrt-u-star" => Ok(Schedule::SqrtUStar),
        other => Err(CliError::Usage(format!(
            "unknown schedule `{other}` (want tau:<f>, u-star, sqrt-u-star, u-star-plus:<i>, fixed:<i>)"
        ))),
    }
}

fn schedule_value(s: &Schedule, env: &Envelope, n: u64) -> Result<u64, CliError> {
    Ok(match s {
        Schedule::Tau(tau) => schedule_k(n, *tau)? as u64,
        Schedule::UStar => env.u_star(n),
        Schedule::SqrtUStar => (env.u_star(n) as f64).sqrt().ceil() as u64,
        Schedule::UStarPlus(add) => env.u_star(n) + add,
        Schedule::Fixed(k) => *k,
    })
}

pub fn run(a: RadiusArgs) -> Result<(), CliError> {
    let env = parse_envelope(&a.envelope)?;
    if env.support_size().is_some() {
        return Err(CliError::Usage(
            "radius bounds need an infinite-support envelope (geometric or power tail)".into(),
        ));
    }
    let grid = parse_n_grid(&a.n_grid)?;
    let schedule = parse_schedule(&a.k_schedule)?;
    let pairs: Vec<(u64, u64)> = grid
        .iter()
        .map(|&n| Ok((n, schedule_value(&schedule, &env, n)?)))
        .collect::<Result<_, CliError>>()?;
    let report = classify_regime(&env, &pairs)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &report.rows {
        let lower = envelope_radius_lower(&env, row.n)?;
        let upper = envelope_radius_upper(&env, row.n);
        let restricted_upper = finite_alphabet_radius_bounds(row.k, row.n).upper_bits;
        let warning = if lower > upper { "lower_exceeds_upper" } else { "" };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.k,
            row.u_star,
            float(lower),
            float(upper),
            float(restricted_upper),
            float(row.ratio_proxy),
            row.admissible,
            row.regime.as_str(),
            warning,
        ));
    }
    symio::write_text(&a.out, &csv)
}
