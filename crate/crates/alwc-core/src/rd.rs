//! Rate-distortion function on countable alphabets under per-letter
//! Hamming distortion, via the water-level closed form
//! `R(d) = H(mu) - H(mu~_theta)` where `mu~_theta` clips every mass except
//! the largest at level `theta` and `theta` solves `kappa_theta = d`.
//!
//! All functions here expect (or produce) pmfs sorted in decreasing order;
//! [`sort_decreasing`] records the permutation for reporting.

use alloc::vec::Vec;

use crate::dist::{Pmf, Tail};
use crate::error::Error;
use crate::math::entropy_term_bits;

/// One evaluated point of the rate-distortion curve.
#[derive(Debug, Clone, PartialEq)]
pub struct RdPoint {
    pub d: f64,
    /// Water level solving `kappa_theta = d` (0 at the lossless endpoint).
    pub theta: f64,
    /// `kappa_theta` actually attained by the solver.
    pub kappa: f64,
    /// Smallest `k > 1` with `f(k+1) <= theta` (0 at the lossless endpoint).
    pub k_cut: u64,
    pub tilde_entropy_bits: f64,
    pub rate_bits: f64,
}

/// Sorts the head in decreasing order, keeping the analytic tail in place.
///
/// Returns the sorted pmf and the 1-based permutation: entry `i` is the
/// original index of the `i`-th largest mass. Rejects pmfs whose smallest
/// head mass falls below the first tail value, since a correct sort would
/// then have to interleave head symbols into the infinite tail.
pub fn sort_decreasing(pmf: &Pmf) -> Result<(Pmf, Vec<u64>), Error> {
    let head = pmf.head();
    let mut idx: Vec<usize> = (0..head.len()).collect();
    idx.sort_by(|&a, &b| head[b].total_cmp(&head[a]).then(a.cmp(&b)));
    let sorted_head: Vec<f64> = idx.iter().map(|&i| head[i]).collect();
    let perm: Vec<u64> = idx.iter().map(|&i| i as u64 + 1).collect();
    if !matches!(pmf.tail(), Tail::None) && !sorted_head.is_empty() {
        let tail_first = pmf.mass(head.len() as u64 + 1);
        if sorted_head[sorted_head.len() - 1] + 1e-15 < tail_first {
            return Err(Error::OutOfRange(
                "head mass below first tail value; sort would interleave into the tail",
            ));
        }
    }
    Ok((Pmf::new(sorted_head, pmf.tail())?, perm))
}

/// Largest index carrying mass strictly above `theta`, floored at 1.
/// On a sorted pmf this makes `kappa_theta = (cut-1) theta + F-bar(cut)`.
fn cut_index(sorted: &Pmf, theta: f64) -> u64 {
    if sorted.mass(2) <= theta {
        return 1;
    }
    let mut hi = 4u64;
    while sorted.mass(hi) > theta {
        hi *= 2;
    }
    let mut lo = hi / 2; // mass(lo) > theta may fail for hi=4 -> lo=2 ok
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if sorted.mass(mid) > theta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `kappa_theta = sum_{i>1} min(theta, f(i))` on a sorted pmf.
pub fn kappa_at(sorted: &Pmf, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    let cut = cut_index(sorted, theta);
    (cut - 1) as f64 * theta + sorted.tail_mass(cut)
}

/// Solves `kappa_theta = d` by bisection over `theta in (0, f(2)]`.
///
/// `kappa` is piecewise linear and strictly increasing on that interval,
/// with kinks at the mass values, so bisection is exact to bracket width.
/// Distortions above `kappa_{f(2)}` are outside the conservative validity
/// proxy and rejected.
pub fn theta_for_distortion(sorted: &Pmf, d: f64) -> Result<f64, Error> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::OutOfRange("distortion must be positive"));
    }
    let f2 = sorted.mass(2);
    if f2 <= 0.0 {
        return Err(Error::OutOfRange("source is a point mass; no positive distortion applies"));
    }
    let d_max = kappa_at(sorted, f2);
    if d > d_max + 1e-12 {
        return Err(Error::OutOfRange("distortion exceeds the theta <= f(2) validity proxy"));
    }
    let (mut lo, mut hi) = (0.0f64, f2);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if kappa_at(sorted, mid) < d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `H(mu~_theta)` by the three-term expansion
/// `(1-k) log 1/(1-k) + (cut-1) theta log 1/theta + sum_{i>cut} f log 1/f`,
/// with the last sum in closed form over the analytic tail.
pub fn tilde_entropy(sorted: &Pmf, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    let cut = cut_index(sorted, theta);
    let kappa = (cut - 1) as f64 * theta + sorted.tail_mass(cut);
    entropy_term_bits(1.0 - kappa) + (cut - 1) as f64 * entropy_term_bits(theta)
        + sorted.entropy_bits_beyond(cut)
}

/// Full rate-distortion evaluation at distortion `d`.
pub fn rate_distortion(pmf: &Pmf, d: f64) -> Result<RdPoint, Error> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::OutOfRange("distortion must lie in [0, 1]"));
    }
    let (sorted, _) = sort_decreasing(pmf)?;
    let entropy = sorted.entropy_bits();
    if d == 0.0 {
        return Ok(RdPoint {
            d,
            theta: 0.0,
            kappa: 0.0,
            k_cut: 0,
            tilde_entropy_bits: 0.0,
            rate_bits: entropy,
        });
    }
    if sorted.mass(1) >= 1.0 - 1e-15 {
        // point mass: zero rate at every distortion
        return Ok(RdPoint {
            d,
            theta: 0.0,
            kappa: d,
            k_cut: 0,
            tilde_entropy_bits: 0.0,
            rate_bits: 0.0,
        });
    }
    let theta = theta_for_distortion(&sorted, d)?;
    let kappa = kappa_at(&sorted, theta);
    let cut = cut_index(&sorted, theta);
    let tilde = tilde_entropy(&sorted, theta);
    Ok(RdPoint {
        d,
        theta,
        kappa,
        k_cut: cut.max(2),
        tilde_entropy_bits: tilde,
        rate_bits: (entropy - tilde).max(0.0),
    })
}

/// One row of the `d -> 0` limit report.
#[derive(Debug, Clone, PartialEq)]
pub struct RdRow {
    pub d: f64,
    pub valid: bool,
    pub point: Option<RdPoint>,
    /// `H(mu) - R(d)`, the entropy gap closed as `d -> 0`.
    pub gap_bits: f64,
}

/// Evaluates the curve on a grid, marking out-of-validity points instead
/// of aborting, and reporting the entropy gap per row.
pub fn rd_limit_check(pmf: &Pmf, d_grid: &[f64]) -> Vec<RdRow> {
    let entropy = pmf.entropy_bits();
    d_grid
        .iter()
        .map(|&d| match rate_distortion(pmf, d) {
            Ok(p) => {
                let gap = entropy - p.rate_bits;
                RdRow { d, valid: true, point: Some(p), gap_bits: gap }
            }
            Err(_) => RdRow { d, valid: false, point: None, gap_bits: f64::NAN },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::abs;

    #[test]
    fn sorting() {
        let p = Pmf::explicit(alloc::vec![0.2, 0.5, 0.3]).unwrap();
        let (s, perm) = sort_decreasing(&p).unwrap();
        assert_eq!(s.head(), &[0.5, 0.3, 0.2]);
        assert_eq!(perm, alloc::vec![2, 3, 1]);
        let g = Pmf::geometric(0.5).unwrap();
        let (s, perm) = sort_decreasing(&g).unwrap();
        assert_eq!(s, g);
        assert!(perm.is_empty());
        // idempotent
        let (s2, _) = sort_decreasing(&s).unwrap();
        assert_eq!(s2, s);
        // head below the tail start is rejected
        let bad = Pmf::new(
            alloc::vec![0.55, 0.05],
            Tail::Geometric { scale: 1.6, ratio: 0.5 },
        )
        .unwrap();
        assert!(sort_decreasing(&bad).is_err());
    }

    #[test]
    fn theta_solution_for_geometric() {
        let (g, _) = sort_decreasing(&Pmf::geometric(0.5).unwrap()).unwrap();
        let theta = theta_for_distortion(&g, 0.125).unwrap();
        assert!(abs(theta - 3.0 / 128.0) < 1e-10);
        // kappa recomputed by brute force over 10^4 symbols
        let brute: f64 = (2..=10_000u64).map(|i| theta.min(g.mass(i))).sum();
        assert!(abs(brute - 0.125) < 1e-9);
        // monotone in d
        assert!(theta_for_distortion(&g, 1e-6).unwrap() < theta_for_distortion(&g, 1e-3).unwrap());
        // out of validity
        assert!(theta_for_distortion(&g, 0.9).is_err());
    }

    #[test]
    fn tilde_entropy_against_explicit_construction() {
        let (g, _) = sort_decreasing(&Pmf::geometric(0.5).unwrap()).unwrap();
        let theta = 3.0 / 128.0;
        assert_eq!(cut_index(&g, theta), 5);
        let three_term = tilde_entropy(&g, theta);
        // explicit mu~ vector over 10^4 symbols
        let kappa: f64 = (2..=10_000u64).map(|i| theta.min(g.mass(i))).sum();
        let mut h = entropy_term_bits(1.0 - kappa);
        for i in 2..=10_000u64 {
            h += entropy_term_bits(theta.min(g.mass(i)));
        }
        assert!(abs(three_term - h) < 1e-9);
        // mpmath cross-check of the closed form
        assert!(abs(three_term - 0.894974208756988) < 1e-12);
        // theta -> 0 collapse
        assert!(tilde_entropy(&g, 1e-8) < 1e-5);
    }

    #[test]
    fn rate_distortion_points() {
        let g = Pmf::geometric(0.5).unwrap();
        let p0 = rate_distortion(&g, 0.0).unwrap();
        assert!(abs(p0.rate_bits - g.entropy_bits()) < 1e-12);
        let p = rate_distortion(&g, 0.125).unwrap();
        assert!(abs(p.theta - 3.0 / 128.0) < 1e-10);
        assert_eq!(p.k_cut, 5);
        assert!(abs(p.kappa - 0.125) < 1e-10);
        assert!(abs(p.rate_bits - 1.105025791243012) < 1e-9);
        // grid convexity and monotonicity
        let rates: Vec<f64> = (1..=20)
            .map(|i| rate_distortion(&g, i as f64 * 0.01).unwrap().rate_bits)
            .collect();
        for w in rates.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        for w in rates.windows(3) {
            assert!(w[2] - 2.0 * w[1] + w[0] >= -1e-9);
        }
    }

    #[test]
    fn limit_report() {
        let g = Pmf::geometric(0.5).unwrap();
        let rows = rd_limit_check(&g, &[1e-1, 1e-2, 1e-3, 1e-4]);
        for w in rows.windows(2) {
            assert!(w[1].gap_bits < w[0].gap_bits);
        }
        assert!(rows[3].gap_bits < 0.01);

        // finite uniform source: gap matches the hand formula
        let u = Pmf::explicit(alloc::vec![0.25; 4]).unwrap();
        let d = 0.1;
        let row = rate_distortion(&u, d).unwrap();
        let theta = d / 3.0;
        let hand = entropy_term_bits(1.0 - d) + 3.0 * entropy_term_bits(theta);
        assert!(abs(row.tilde_entropy_bits - hand) < 1e-12);

        // point mass: every gap is zero
        let d1 = Pmf::delta(1).unwrap();
        for row in rd_limit_check(&d1, &[0.5, 0.1, 1e-3]) {
            assert!(row.valid);
            assert!(abs(row.gap_bits) < 1e-15);
        }
    }
}
