//! Numerical laboratory for minimax redundancy (information radius):
//! finite-alphabet sandwich, envelope-class upper/lower bounds, the
//! critical-dimension sandwich, metric-entropy volume bounds, the
//! fixed-point scale, the admissibility condition, the redundancy-gain
//! regime classifier, and an exact small-instance radius oracle computed
//! as channel capacity.
//!
//! Lower bounds derived from asymptotic statements are reported in their
//! uninflated form (the vanishing `(1 + o(1))` factors set to 1) and the
//! method tags say so.

use alloc::vec::Vec;

use crate::dist::{Envelope, EnvelopeProbability, HazardInverse, Pmf};
use crate::error::Error;
use crate::math::{self, LOG2_E};

/// Two-sided bound on a total (not per-symbol) redundancy in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusBounds {
    pub n: u64,
    pub lower_bits: f64,
    pub upper_bits: f64,
    pub lower_method: &'static str,
    pub upper_method: &'static str,
}

/// Additive constants of the finite-alphabet sandwich. The source result
/// only asserts universal constants; 2 bits is validated against the
/// exact small-instance oracle.
pub const FINITE_ALPHABET_SLACK: f64 = 2.0;

/// `((k-1)/2) log2 n` sandwich for the full simplex on `k` symbols.
pub fn finite_alphabet_radius_bounds(k: u64, n: u64) -> RadiusBounds {
    let leading = (k.saturating_sub(1)) as f64 / 2.0 * math::log2(n as f64);
    RadiusBounds {
        n,
        lower_bits: (leading - FINITE_ALPHABET_SLACK).max(0.0),
        upper_bits: leading + FINITE_ALPHABET_SLACK,
        lower_method: "finite-alphabet leading term minus slack",
        upper_method: "finite-alphabet leading term plus slack",
    }
}

/// Exact information radius of a finite family of short product sources,
/// computed as the capacity of the index -> sequence channel by
/// Blahut-Arimoto alternating maximization. Returns bits.
///
/// Instances are limited to alphabet size 4 and block length 4 so the
/// outcome space stays exhaustively enumerable.
pub fn exact_radius_small(family: &[Pmf], n: u32) -> Result<f64, Error> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if n == 0 || n > 4 {
        return Err(Error::OutOfRange("oracle block length must be 1..=4"));
    }
    let mut alphabet = 0u64;
    for pmf in family {
        match pmf.support_size() {
            Some(m) if m <= 4 => alphabet = alphabet.max(m),
            _ => return Err(Error::OutOfRange("oracle needs finite support of size <= 4")),
        }
    }
    if alphabet == 0 {
        return Err(Error::OutOfRange("family has empty support"));
    }
    let outcomes = (alphabet as usize).pow(n);
    // channel matrix: W[j][o] = prod_i mu_j(x_i)
    let rows: Vec<Vec<f64>> = family
        .iter()
        .map(|pmf| {
            (0..outcomes)
                .map(|mut o| {
                    let mut w = 1.0;
                    for _ in 0..n {
                        let sym = (o % alphabet as usize) as u64 + 1;
                        o /= alphabet as usize;
                        w *= pmf.mass(sym);
                    }
                    w
                })
                .collect()
        })
        .collect();
    let m = family.len();
    let mut p = alloc::vec![1.0 / m as f64; m];
    let mut q = alloc::vec![0.0f64; outcomes];
    // boundary-tied optima converge like O(1/t), so the cap must carry
    // the tolerance; dominated members keep a positive floor so every
    // reachable outcome keeps positive mixture mass
    let tol_nats = 1e-10;
    const P_FLOOR: f64 = 1e-280;
    for _ in 0..5_000_000u64 {
        for (o, qo) in q.iter_mut().enumerate() {
            *qo = rows.iter().zip(&p).map(|(row, &pj)| pj * row[o]).sum();
        }
        // per-member divergence to the mixture, in nats
        let d: Vec<f64> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&q)
                    .filter(|(&w, _)| w > 0.0)
                    .map(|(&w, &qo)| w * math::ln(w / qo))
                    .sum()
            })
            .collect();
        let upper = d.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let lower: f64 = p.iter().zip(&d).map(|(&pj, &dj)| pj * dj).sum();
        if upper - lower <= tol_nats {
            return Ok(0.5 * (upper + lower) * LOG2_E);
        }
        let mut z = 0.0;
        for (pj, &dj) in p.iter_mut().zip(&d) {
            *pj = (*pj * math::exp(dj - upper)).max(P_FLOOR);
            z += *pj;
        }
        for pj in p.iter_mut() {
            *pj /= z;
        }
    }
    Err(Error::NoSolution("capacity iteration did not converge"))
}

/// Scan minimization of the envelope-class upper bound
/// `min_u [ n F-bar(u) log2 e + ((u-1)/2) log2 n ] + 2`.
pub fn envelope_radius_upper(f: &Envelope, n: u64) -> f64 {
    let mu = f.envelope_probability();
    envelope_radius_upper_mu(&mu, n)
}

pub(crate) fn envelope_radius_upper_mu(mu: &EnvelopeProbability, n: u64) -> f64 {
    let log2_n = math::log2(n as f64);
    let u_max = mu.u_star(n) + 64;
    let mut best = f64::INFINITY;
    for u in 1..=u_max {
        let v = n as f64 * mu.tail_fn(u) * LOG2_E + (u - 1) as f64 / 2.0 * log2_n;
        if v < best {
            best = v;
        }
    }
    best + 2.0
}

/// Trapezoid quadrature of `int_1^x_hi U(t) / (2t) dt` in nats, via the
/// substitution `y = ln t` on at least 4096 panels.
fn hazard_integral_nats(uf: &HazardInverse, x_hi: f64) -> Result<f64, Error> {
    if x_hi.is_nan() || x_hi <= 1.0 {
        return Ok(0.0);
    }
    const PANELS: usize = 4096;
    let y_hi = math::ln(x_hi);
    let h = y_hi / PANELS as f64;
    let mut acc = 0.0;
    for i in 0..=PANELS {
        let y = i as f64 * h;
        let u = uf.value(math::exp(y))?;
        let w = if i == 0 || i == PANELS { 0.5 } else { 1.0 };
        acc += w * u;
    }
    Ok(acc * h / 2.0)
}

/// Integral lower bound `log2 e * int_1^n U(x)/(2x) dx` for the
/// envelope-class radius, reported uninflated (the vanishing-factor
/// correction set to 1). Needs an infinite-support envelope.
pub fn envelope_radius_lower(f: &Envelope, n: u64) -> Result<f64, Error> {
    if f.support_size().is_some() {
        return Err(Error::InvalidParameter("integral lower bound needs infinite support"));
    }
    if n <= 1 {
        return Ok(0.0);
    }
    let uf = f.envelope_probability().hazard_inverse();
    Ok(LOG2_E * hazard_integral_nats(&uf, n as f64)?)
}

/// Critical-dimension sandwich: `((u*-1)/4) log2 n` below,
/// `2 + log2 e + ((u*-1)/2) log2 n` above.
pub fn u_star_sandwich(f: &Envelope, n: u64) -> RadiusBounds {
    let u = f.u_star(n);
    let log2_n = math::log2(n as f64);
    RadiusBounds {
        n,
        lower_bits: (u - 1) as f64 / 4.0 * log2_n,
        upper_bits: 2.0 + LOG2_E + (u - 1) as f64 / 2.0 * log2_n,
        lower_method: "critical-dimension quarter term (asymptotic form, uninflated)",
        upper_method: "critical-dimension half term plus constants",
    }
}

/// Volume-comparison bounds on the metric entropy (in nats) of an
/// envelope class under Hellinger distance at scale `epsilon`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricEntropyBounds {
    pub epsilon: f64,
    pub lower_nats: f64,
    pub upper_nats: f64,
    /// `min{m >= 1 : F-bar(m) < epsilon^2 / 16}`.
    pub n_eps: u64,
    pub l_f: u64,
    /// Box/ball dimension `n_eps - l_f` of the lower bound.
    pub m_dim: u64,
}

/// Lower bound from the box-to-ball volume ratio, upper bound from the
/// inflated-box comparison; both evaluated in log space. The lower bound
/// takes logs of the raw volume ratio (the `+ m ln(1/eps)` sign follows
/// from the ratio form).
pub fn metric_entropy_bounds(f: &Envelope, epsilon: f64) -> Result<MetricEntropyBounds, Error> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::OutOfRange("epsilon must lie in (0, 1)"));
    }
    let mu = f.envelope_probability();
    let l = mu.l_f();
    let thr = epsilon * epsilon / 16.0;
    // smallest m >= 1 with F-bar(m) < thr
    let below = |m: u64| mu.tail_fn(m) < thr;
    let n_eps = if below(1) {
        1
    } else {
        let mut hi = 2u64;
        while !below(hi) {
            hi *= 2;
        }
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    let m_dim = n_eps.saturating_sub(l);
    let mut half_log_mass = 0.0; // sum_{i=l+1}^{n_eps} ln sqrt(f(i))
    for i in (l + 1)..=n_eps {
        let v = f.value(i);
        if v <= 0.0 {
            return Err(Error::InvalidParameter("envelope vanishes inside the volume window"));
        }
        half_log_mass += 0.5 * math::ln(v);
    }
    // raw log of the volume ratio; values below zero are vacuous (the
    // class always has at least one cell) but keep the bound monotone
    let lower_nats =
        half_log_mass + m_dim as f64 * math::ln(1.0 / epsilon) - math::ln_ball_volume(m_dim);
    let b = -math::ln(mu.tail_fn(l));
    let correction = m_dim as f64 / math::sqrt(1.0 - math::exp(-b));
    let mut head_terms = 0.0;
    for i in 1..=l {
        head_terms += math::ln(math::sqrt(f.value(i)) + epsilon / 4.0);
    }
    let upper_nats = head_terms + half_log_mass - math::ln_ball_volume(n_eps)
        + correction
        + n_eps as f64 * math::ln(8.0 / epsilon);
    debug_assert!(lower_nats <= upper_nats + 1e-9);
    Ok(MetricEntropyBounds { epsilon, lower_nats, upper_nats, n_eps, l_f: l, m_dim })
}

/// Fixed-point scale: the solution of `l(1/eps) = n eps^2 / 8` with
/// `l(1/eps) = int_1^{1/eps^2} U(x)/(2x) dx`, found by bisection.
pub fn epsilon_star(f: &Envelope, n: u64) -> Result<f64, Error> {
    if f.support_size().is_some() {
        return Err(Error::InvalidParameter("fixed-point scale needs infinite support"));
    }
    if n < 2 {
        return Err(Error::OutOfRange("fixed point needs n >= 2"));
    }
    let uf = f.envelope_probability().hazard_inverse();
    let ell = |eps: f64| hazard_integral_nats(&uf, 1.0 / (eps * eps));
    let g = |eps: f64| -> Result<f64, Error> { Ok(ell(eps)? - n as f64 * eps * eps / 8.0) };
    let (mut lo, mut hi) = (1e-9f64, 1.0 - 1e-12);
    if !(g(lo)? > 0.0 && g(hi)? < 0.0) {
        return Err(Error::NoSolution("no sign change for the fixed-point bracket"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    let eps = 0.5 * (lo + hi);
    let l_val = ell(eps)?;
    if math::abs(l_val - n as f64 * eps * eps / 8.0) > 1e-6 * l_val.max(1.0) {
        return Err(Error::NoSolution("fixed-point residual above tolerance"));
    }
    Ok(eps)
}

/// Admissibility of scale `eps*(n)` for truncation size `k`:
/// `F-bar(k-1) <= eps*(n)^2 / 16`. A zero tail mass short-circuits to
/// `true` (finite-support envelopes past their support).
pub fn admissibility(f: &Envelope, k: u64, n: u64) -> Result<bool, Error> {
    if k < 1 {
        return Err(Error::OutOfRange("truncation size must be >= 1"));
    }
    let mu = f.envelope_probability();
    let fbar = mu.tail_fn(k.saturating_sub(1));
    if fbar <= 0.0 {
        return Ok(true);
    }
    let eps = epsilon_star(f, n)?;
    Ok(fbar <= eps * eps / 16.0)
}

/// Lower bound on the radius from the metric-entropy route:
/// `log2 e * sup_eps min{ H_eps lower bound, n eps^2 / 8 } - 1`, floored
/// at zero. The sup runs over 64 log-spaced scales in `[1e-6, 0.999]`;
/// using the computable lower bound in place of the true metric entropy
/// keeps this a valid (weaker) lower bound.
pub fn haussler_opper_lower(f: &Envelope, n: u64) -> Result<f64, Error> {
    const POINTS: usize = 64;
    let (lo, hi) = (1e-6f64, 0.999f64);
    let (ln_lo, ln_hi) = (math::ln(lo), math::ln(hi));
    let mut best = f64::NEG_INFINITY;
    for i in 0..POINTS {
        let t = i as f64 / (POINTS - 1) as f64;
        let eps = math::exp(ln_lo + t * (ln_hi - ln_lo));
        let me = metric_entropy_bounds(f, eps)?;
        let v = me.lower_nats.min(n as f64 * eps * eps / 8.0);
        if v > best {
            best = v;
        }
    }
    Ok((LOG2_E * best - 1.0).max(0.0))
}

/// Per-block-length classification of a truncation schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Gain,
    NoGain,
    Indeterminate,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Gain => "gain",
            Regime::NoGain => "no_gain",
            Regime::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeRow {
    pub n: u64,
    pub k: u64,
    pub u_star: u64,
    pub regime: Regime,
    /// Restricted-radius upper bound over full-radius lower bound.
    pub ratio_proxy: f64,
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub rows: Vec<RegimeRow>,
}

/// Theorem-style dichotomy at finite n: `k >= u*` is the no-gain side;
/// `2k <= u*` is the numeric proxy for `k = o(u*)` and classifies as
/// gain; anything between is indeterminate.
pub fn classify_regime(f: &Envelope, schedule: &[(u64, u64)]) -> Result<RegimeReport, Error> {
    let mu = f.envelope_probability();
    let mut rows = Vec::with_capacity(schedule.len());
    for &(n, k) in schedule {
        let u = mu.u_star(n);
        let regime = if k >= u {
            Regime::NoGain
        } else if 2 * k <= u {
            Regime::Gain
        } else {
            Regime::Indeterminate
        };
        let restricted_upper = finite_alphabet_radius_bounds(k, n).upper_bits;
        let full_lower = envelope_radius_lower(f, n)?;
        let ratio_proxy = restricted_upper / full_lower.max(1e-9);
        let admissible = admissibility(f, k, n)?;
        rows.push(RegimeRow { n, k, u_star: u, regime, ratio_proxy, admissible });
    }
    Ok(RegimeReport { rows })
}
