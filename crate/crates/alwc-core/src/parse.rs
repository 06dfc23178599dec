//! Strict text grammar for sources and envelopes, shared by the CLI and
//! config surfaces:
//!
//! ```text
//! geometric:p=0.5
//! zeta:alpha=2.0
//! explicit:[p1,p2,...]
//! envelope-geom:c=2.0,r=0.5
//! envelope-power:c=1.0,alpha=2.0
//! envelope-explicit:[f1,...]
//! ```
//!
//! Unknown kinds, unknown or duplicate keys, and trailing garbage are
//! errors.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::dist::{Envelope, Pmf};
use crate::error::Error;

fn split_kind(s: &str) -> Result<(&str, &str), Error> {
    let s = s.trim();
    match s.split_once(':') {
        Some((kind, rest)) => Ok((kind.trim(), rest.trim())),
        None => Err(Error::Parse(format!("expected `kind:args`, got `{s}`"))),
    }
}

fn parse_number(s: &str) -> Result<f64, Error> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a number: `{s}`")))
}

/// Parses `k1=v1,k2=v2` against an exact expected key set, in any order.
fn parse_keys(rest: &str, expected: &[&str]) -> Result<Vec<f64>, Error> {
    let mut values: Vec<Option<f64>> = alloc::vec![None; expected.len()];
    for item in rest.split(',') {
        let (key, val) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `key=value`, got `{item}`")))?;
        let key = key.trim();
        let idx = expected
            .iter()
            .position(|&e| e == key)
            .ok_or_else(|| Error::Parse(format!("unknown key `{key}`")))?;
        if values[idx].is_some() {
            return Err(Error::Parse(format!("duplicate key `{key}`")));
        }
        values[idx] = Some(parse_number(val)?);
    }
    expected
        .iter()
        .zip(values)
        .map(|(&k, v)| v.ok_or_else(|| Error::Parse(format!("missing key `{k}`"))))
        .collect()
}

fn parse_list(rest: &str) -> Result<Vec<f64>, Error> {
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("expected `[v1,v2,...]`".to_string()))?;
    if inner.trim().is_empty() {
        return Err(Error::Parse("empty list".to_string()));
    }
    inner.split(',').map(parse_number).collect()
}

/// Parse a source (pmf) spec string.
pub fn parse_pmf(s: &str) -> Result<Pmf, Error> {
    let (kind, rest) = split_kind(s)?;
    match kind {
        "geometric" => {
            let v = parse_keys(rest, &["p"])?;
            Pmf::geometric(v[0])
        }
        "zeta" => {
            let v = parse_keys(rest, &["alpha"])?;
            Pmf::zeta(v[0])
        }
        "explicit" => Pmf::explicit(parse_list(rest)?),
        other => Err(Error::Parse(format!("unknown source kind `{other}`"))),
    }
}

/// Parse an envelope spec string.
pub fn parse_envelope(s: &str) -> Result<Envelope, Error> {
    let (kind, rest) = split_kind(s)?;
    match kind {
        "envelope-geom" => {
            let v = parse_keys(rest, &["c", "r"])?;
            Envelope::geometric_tail(v[0], v[1])
        }
        "envelope-power" => {
            let v = parse_keys(rest, &["c", "alpha"])?;
            Envelope::power_tail(v[0], v[1])
        }
        "envelope-explicit" => Envelope::explicit(parse_list(rest)?),
        other => Err(Error::Parse(format!("unknown envelope kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::abs;

    #[test]
    fn parses_the_grammar() {
        let g = parse_pmf("geometric:p=0.5").unwrap();
        assert!(abs(g.mass(1) - 0.5) < 1e-15);
        let z = parse_pmf("zeta:alpha=2.0").unwrap();
        assert!(abs(z.tail_mass(0) - 1.0) < 1e-12);
        let e = parse_pmf("explicit:[0.25,0.75]").unwrap();
        assert_eq!(e.head(), &[0.25, 0.75]);
        let env = parse_envelope("envelope-geom:c=2.0,r=0.5").unwrap();
        assert_eq!(env.value(1), 1.0);
        let env = parse_envelope("envelope-geom:r=0.5,c=2.0").unwrap();
        assert_eq!(env.value(1), 1.0);
        let pw = parse_envelope("envelope-power:c=1.0,alpha=2.0").unwrap();
        assert!(abs(pw.mass_sum() - 1.6449340668482264) < 1e-12);
        let ex = parse_envelope("envelope-explicit:[1.0,0.5]").unwrap();
        assert_eq!(ex.head(), &[1.0, 0.5]);
    }

    #[test]
    fn rejects_malformed_specs() {
        assert!(parse_pmf("geometric").is_err());
        assert!(parse_pmf("geometric:q=0.5").is_err());
        assert!(parse_pmf("geometric:p=0.5,p=0.5").is_err());
        assert!(parse_pmf("geometric:p=0.5,extra=1").is_err());
        assert!(parse_pmf("gauss:p=0.5").is_err());
        assert!(parse_pmf("explicit:[0.5,0.5,]").is_err());
        assert!(parse_pmf("explicit:0.5,0.5").is_err());
        assert!(parse_pmf("envelope-geom:c=2.0,r=0.5").is_err());
        assert!(parse_envelope("geometric:p=0.5").is_err());
        assert!(parse_envelope("envelope-geom:c=2.0").is_err());
    }
}
