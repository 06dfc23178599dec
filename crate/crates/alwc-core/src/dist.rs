//! Probability mass functions and envelope functions on the positive
//! integers `1, 2, ...` with exact analytic tails.
//!
//! Everything here is immutable after construction and safe to share.
//! Entropies and divergences are in bits; masses are exact up to an
//! absolute tolerance of `1e-12` (closed-form tails, no truncation).

use alloc::vec::Vec;

use crate::error::Error;
use crate::math::{self, entropy_term_bits, SplitMix64};

/// Absolute tolerance on total masses.
pub const MASS_TOL: f64 = 1e-12;

/// Analytic description of values beyond the explicit head.
///
/// With head length `m`, the tail gives `f(x)` for `x > m`:
/// geometric tails are `scale * ratio^x`, power tails `scale * x^-alpha`.
/// Note the exponent is the absolute symbol index, not an offset, so the
/// tail expression is independent of the head length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    None,
    Geometric { scale: f64, ratio: f64 },
    Power { scale: f64, alpha: f64 },
}

impl Tail {
    fn validate(&self) -> Result<(), Error> {
        match *self {
            Tail::None => Ok(()),
            Tail::Geometric { scale, ratio } => {
                if !(ratio > 0.0 && ratio < 1.0) {
                    return Err(Error::InvalidParameter("geometric tail ratio must be in (0,1)"));
                }
                if !(scale > 0.0 && scale.is_finite()) {
                    return Err(Error::InvalidParameter("geometric tail scale must be positive"));
                }
                Ok(())
            }
            Tail::Power { scale, alpha } => {
                if !(alpha > 1.0 && alpha.is_finite()) {
                    return Err(Error::InvalidParameter("power tail exponent must exceed 1"));
                }
                if !(scale > 0.0 && scale.is_finite()) {
                    return Err(Error::InvalidParameter("power tail scale must be positive"));
                }
                Ok(())
            }
        }
    }

    /// `f(x)` for a tail point.
    fn value(&self, x: u64) -> f64 {
        debug_assert!(x >= 1);
        match *self {
            Tail::None => 0.0,
            Tail::Geometric { scale, ratio } => scale * math::powf(ratio, x as f64),
            Tail::Power { scale, alpha } => scale * math::powf(x as f64, -alpha),
        }
    }

    /// `sum_{x > u} f(x)` in closed form.
    fn sum_beyond(&self, u: u64) -> f64 {
        match *self {
            Tail::None => 0.0,
            Tail::Geometric { scale, ratio } => {
                // sum_{x >= u+1} scale r^x = scale r^(u+1) / (1 - r)
                scale * math::powf(ratio, u as f64 + 1.0) / (1.0 - ratio)
            }
            Tail::Power { scale, alpha } => scale * math::hurwitz_zeta(alpha, u + 1),
        }
    }

    /// `sum_{x > u} f(x) log2(1/f(x))` in closed form.
    fn entropy_bits_beyond(&self, u: u64) -> f64 {
        match *self {
            Tail::None => 0.0,
            Tail::Geometric { scale, ratio } => {
                let s0 = self.sum_beyond(u);
                // sum_{x >= b} x r^x = r^b (b - (b-1) r) / (1-r)^2
                let b = u as f64 + 1.0;
                let rb = math::powf(ratio, b);
                let s1 = scale * rb * (b - (b - 1.0) * ratio) / ((1.0 - ratio) * (1.0 - ratio));
                -math::log2(scale) * s0 - math::log2(ratio) * s1
            }
            Tail::Power { scale, alpha } => {
                let z = math::hurwitz_zeta(alpha, u + 1);
                let l = math::power_log_sum(alpha, u + 1);
                -math::log2(scale) * scale * z + alpha * scale * l / math::LN_2
            }
        }
    }

    fn is_none(&self) -> bool {
        matches!(self, Tail::None)
    }
}

/// A probability mass function on `{1, 2, ...}`.
///
/// Symbols `1..=m` carry the explicit `head` masses; `x > m` follows the
/// analytic tail. Total mass must be 1 within [`MASS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    head: Vec<f64>,
    tail: Tail,
}

impl Pmf {
    pub fn new(head: Vec<f64>, tail: Tail) -> Result<Self, Error> {
        tail.validate()?;
        for &p in &head {
            if !p.is_finite() || !(-MASS_TOL..=1.0 + MASS_TOL).contains(&p) {
                return Err(Error::InvalidParameter("pmf head mass outside [0,1]"));
            }
        }
        let head: Vec<f64> = head.iter().map(|&p| p.clamp(0.0, 1.0)).collect();
        let pmf = Pmf { head, tail };
        if !pmf.tail.is_none() {
            let first = pmf.tail.value(pmf.head.len() as u64 + 1);
            if first > 1.0 + 1e-9 {
                return Err(Error::InvalidParameter("pmf tail value exceeds 1"));
            }
        }
        let total = pmf.tail_mass(0);
        if math::abs(total - 1.0) > MASS_TOL {
            return Err(Error::NotNormalized { total });
        }
        Ok(pmf)
    }

    /// Geometric law `P(X = x) = p (1-p)^(x-1)`, `p` in `(0, 1)`.
    pub fn geometric(p: f64) -> Result<Self, Error> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter("geometric parameter must be in (0,1)"));
        }
        Pmf::new(
            Vec::new(),
            Tail::Geometric { scale: p / (1.0 - p), ratio: 1.0 - p },
        )
    }

    /// Zeta law `P(X = x) = x^-alpha / zeta(alpha)`, `alpha > 1`.
    pub fn zeta(alpha: f64) -> Result<Self, Error> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter("zeta exponent must exceed 1"));
        }
        let scale = 1.0 / math::hurwitz_zeta(alpha, 1);
        Pmf::new(Vec::new(), Tail::Power { scale, alpha })
    }

    /// Finite-support pmf from explicit masses for symbols `1..=len`.
    pub fn explicit(head: Vec<f64>) -> Result<Self, Error> {
        Pmf::new(head, Tail::None)
    }

    /// Point mass at symbol `x`.
    pub fn delta(x: u64) -> Result<Self, Error> {
        if x == 0 {
            return Err(Error::InvalidParameter("symbols start at 1"));
        }
        let mut head = alloc::vec![0.0; x as usize];
        head[x as usize - 1] = 1.0;
        Pmf::explicit(head)
    }

    pub fn head(&self) -> &[f64] {
        &self.head
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `Some(m)` for finite support (no analytic tail), `None` otherwise.
    pub fn support_size(&self) -> Option<u64> {
        if self.tail.is_none() {
            Some(self.head.len() as u64)
        } else {
            None
        }
    }

    /// `f_mu(x)`.
    pub fn mass(&self, x: u64) -> f64 {
        assert!(x >= 1, "symbols start at 1");
        if x <= self.head.len() as u64 {
            self.head[x as usize - 1]
        } else {
            self.tail.value(x)
        }
    }

    /// `sum_{x > u} f_mu(x)` (so `u = 0` gives the total mass).
    pub fn tail_mass(&self, u: u64) -> f64 {
        let m = self.head.len() as u64;
        if u >= m {
            return self.tail.sum_beyond(u);
        }
        let mut s = self.tail.sum_beyond(m);
        for &p in &self.head[u as usize..] {
            s += p;
        }
        s
    }

    /// Shannon entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        let mut h = 0.0;
        for &p in &self.head {
            h += entropy_term_bits(p);
        }
        h + self.tail.entropy_bits_beyond(self.head.len() as u64)
    }

    /// `sum_{x > u} f_mu(x) log2(1/f_mu(x))`.
    pub(crate) fn entropy_bits_beyond(&self, u: u64) -> f64 {
        let m = self.head.len() as u64;
        if u >= m {
            return self.tail.entropy_bits_beyond(u);
        }
        let mut h = self.tail.entropy_bits_beyond(m);
        for &p in &self.head[u as usize..] {
            h += entropy_term_bits(p);
        }
        h
    }

    /// `n` i.i.d. draws by inverse CDF; deterministic for a fixed seed.
    pub fn sample(&self, seed: u64, n: usize) -> Vec<u64> {
        let mut rng = SplitMix64::new(seed);
        let table = self.cdf_table();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let u = rng.next_f64();
            out.push(self.invert_cdf(u, &table));
        }
        out
    }

    /// Cumulative table `F(1), ..., F(L)` covering the head and enough of
    /// the tail that table misses are rare; misses fall back to analytic
    /// inversion.
    fn cdf_table(&self) -> Vec<f64> {
        let m = self.head.len();
        let mut cdf = Vec::with_capacity(m + 64);
        let mut acc = 0.0f64;
        for &p in &self.head {
            acc += p;
            cdf.push(acc);
        }
        if !self.tail.is_none() {
            let mut x = m as u64 + 1;
            // extend until the remaining tail mass is negligible
            while acc < 1.0 - 1e-14 && cdf.len() < m + 4096 {
                acc += self.tail.value(x);
                cdf.push(acc);
                x += 1;
            }
        }
        cdf
    }

    fn invert_cdf(&self, u: f64, cdf: &[f64]) -> u64 {
        let idx = cdf.partition_point(|&c| c <= u);
        if idx < cdf.len() {
            return idx as u64 + 1;
        }
        // beyond the table
        if self.tail.is_none() {
            // only reachable through rounding dust; emit the last symbol
            return cdf.len() as u64;
        }
        self.invert_tail(1.0 - u, cdf.len() as u64)
    }

    /// Smallest `x > lo` with `tail_mass(x) < t`, i.e. `F(x) > 1 - t`.
    fn invert_tail(&self, t: f64, lo: u64) -> u64 {
        let guess = match self.tail {
            Tail::None => unreachable!(),
            Tail::Geometric { scale, ratio } => {
                // solve scale r^(x+1)/(1-r) = t
                let x = math::ln(t * (1.0 - ratio) / scale) / math::ln(ratio) - 1.0;
                if x.is_finite() {
                    x
                } else {
                    lo as f64 + 1.0
                }
            }
            Tail::Power { scale, alpha } => {
                // tail_mass(x) ~ scale x^(1-alpha) / (alpha-1)
                let x = math::powf(scale / ((alpha - 1.0) * t), 1.0 / (alpha - 1.0));
                if x.is_finite() {
                    x
                } else {
                    lo as f64 + 1.0
                }
            }
        };
        let mut x = if guess.is_finite() && guess > lo as f64 + 1.0 {
            math::floor(guess) as u64
        } else {
            lo + 1
        };
        if x < lo + 1 {
            x = lo + 1;
        }
        // walk to the exact threshold using exact tail masses
        while x > lo + 1 && self.tail_mass(x - 1) < t {
            x -= 1;
        }
        let mut hops = 0u32;
        while self.tail_mass(x) >= t {
            x += 1;
            hops += 1;
            if hops > 64 {
                // guess was far off; finish by doubling + bisection
                let mut hi = x;
                while self.tail_mass(hi) >= t {
                    hi = hi.saturating_mul(2) + 1;
                }
                let mut lo_b = x;
                while hi - lo_b > 1 {
                    let mid = lo_b + (hi - lo_b) / 2;
                    if self.tail_mass(mid) >= t {
                        lo_b = mid;
                    } else {
                        hi = mid;
                    }
                }
                return hi;
            }
        }
        x
    }

    /// Entropy restricted to the sigma-field generated by `part`.
    pub fn restricted_entropy_bits(&self, part: &PartitionSpec) -> f64 {
        let mut h = 0.0;
        part.for_each_cell_mass(self, |m| h += entropy_term_bits(m));
        h
    }

    /// KL divergence of `self` from `v` restricted to `part`, in bits.
    pub fn restricted_kl_bits(&self, v: &Pmf, part: &PartitionSpec) -> Result<f64, Error> {
        let mu_cells = part.cell_masses(self);
        let v_cells = part.cell_masses(v);
        let mut d = 0.0;
        for (i, (&mc, &vc)) in mu_cells.iter().zip(v_cells.iter()).enumerate() {
            if mc <= 0.0 {
                continue;
            }
            if vc <= 0.0 {
                return Err(Error::AbsoluteContinuity { cell: i });
            }
            d += mc * math::log2(mc / vc);
        }
        Ok(d)
    }

    /// Image of the pmf under the tail partition: masses
    /// `f(1), ..., f(k-1), 1 - F(k-1)` on `{1..k}`.
    pub fn quantized(&self, k: u64) -> Result<Pmf, Error> {
        if k < 2 {
            return Err(Error::InvalidParameter("tail partition needs k >= 2"));
        }
        let mut head = Vec::with_capacity(k as usize);
        for x in 1..k {
            head.push(self.mass(x));
        }
        head.push(self.tail_mass(k - 1).clamp(0.0, 1.0));
        Pmf::new(head, Tail::None)
    }
}

/// A non-negative dominating function `f: {1,2,...} -> [0,1]` with
/// `sum f >= 1`, indexing the class of pmfs bounded by `f` pointwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    head: Vec<f64>,
    tail: Tail,
    mass_sum: f64,
}

impl Envelope {
    /// Head values are clipped to `[0,1]`; leading tail points above 1 are
    /// absorbed into the head (clipped). Rejects `sum f < 1`.
    pub fn new(head: Vec<f64>, tail: Tail) -> Result<Self, Error> {
        tail.validate()?;
        for &v in &head {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter("envelope head values must be non-negative"));
            }
        }
        let mut head: Vec<f64> = head.iter().map(|&v| v.min(1.0)).collect();
        if !tail.is_none() {
            let mut guard = 0u32;
            while tail.value(head.len() as u64 + 1) > 1.0 {
                head.push(1.0);
                guard += 1;
                if guard > 1_000_000 {
                    return Err(Error::InvalidParameter("envelope tail scale too large"));
                }
            }
        }
        let m = head.len() as u64;
        let mass_sum = head.iter().sum::<f64>() + tail.sum_beyond(m);
        if mass_sum < 1.0 - MASS_TOL {
            return Err(Error::MassBelowOne { sum: mass_sum });
        }
        Ok(Envelope { head, tail, mass_sum })
    }

    /// `f(x) = min(1, c r^x)`.
    pub fn geometric_tail(scale: f64, ratio: f64) -> Result<Self, Error> {
        Envelope::new(Vec::new(), Tail::Geometric { scale, ratio })
    }

    /// `f(x) = min(1, c x^-alpha)`.
    pub fn power_tail(scale: f64, alpha: f64) -> Result<Self, Error> {
        Envelope::new(Vec::new(), Tail::Power { scale, alpha })
    }

    /// Finite-support envelope from explicit values.
    pub fn explicit(head: Vec<f64>) -> Result<Self, Error> {
        Envelope::new(head, Tail::None)
    }

    pub fn head(&self) -> &[f64] {
        &self.head
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn support_size(&self) -> Option<u64> {
        if self.tail.is_none() {
            Some(self.head.len() as u64)
        } else {
            None
        }
    }

    /// `f(x)`.
    pub fn value(&self, x: u64) -> f64 {
        assert!(x >= 1, "symbols start at 1");
        if x <= self.head.len() as u64 {
            self.head[x as usize - 1]
        } else {
            self.tail.value(x).min(1.0)
        }
    }

    /// `sum_{x > u} f(x)`.
    pub fn tail_mass(&self, u: u64) -> f64 {
        let m = self.head.len() as u64;
        if u >= m {
            return self.tail.sum_beyond(u);
        }
        let mut s = self.tail.sum_beyond(m);
        for &v in &self.head[u as usize..] {
            s += v;
        }
        s
    }

    /// `sum_x f(x)`, cached at construction.
    pub fn mass_sum(&self) -> f64 {
        self.mass_sum
    }

    /// Summability flag plus the sum. All constructible envelopes are
    /// summable (power exponents `<= 1` are rejected up front); the flag
    /// exists for the finite explicit case and for API symmetry.
    pub fn is_summable(&self) -> (bool, f64) {
        (true, self.mass_sum)
    }

    /// The associated envelope probability: the tightest member of the
    /// class, with support starting at `l_f = max{k : sum_{j>=k} f(j) >= 1}`.
    pub fn envelope_probability(&self) -> EnvelopeProbability {
        // largest k with tail_mass(k-1) >= 1 (boundary treated as >= 1
        // within MASS_TOL so exact-unit tails resolve consistently)
        let ge_one = |k: u64| self.tail_mass(k - 1) >= 1.0 - MASS_TOL;
        debug_assert!(ge_one(1));
        let mut hi = 2u64;
        while ge_one(hi) {
            hi *= 2;
        }
        let mut lo = hi / 2; // ge_one(lo) holds, ge_one(hi) fails
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ge_one(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let l = lo;
        let m = (self.head.len() as u64).max(l);
        let mut head = alloc::vec![0.0f64; m as usize];
        head[l as usize - 1] = (1.0 - self.tail_mass(l)).clamp(0.0, 1.0);
        for x in (l + 1)..=m {
            head[x as usize - 1] = self.value(x);
        }
        let pmf = Pmf::new(head, self.tail).expect("envelope probability is a valid pmf");
        EnvelopeProbability { l, pmf }
    }

    /// Quantile of order `1/n` of the envelope probability (the critical
    /// dimension `u*_f(n)`).
    pub fn u_star(&self, n: u64) -> u64 {
        self.envelope_probability().u_star(n)
    }

    /// Envelope induced on `{1..k}` by the tail partition:
    /// `f(1), ..., f(k-1), min(1, sum_{x>=k} f(x))`.
    pub fn project(&self, k: u64) -> Result<Envelope, Error> {
        if k < 2 {
            return Err(Error::InvalidParameter("tail partition needs k >= 2"));
        }
        let mut head = Vec::with_capacity(k as usize);
        for x in 1..k {
            head.push(self.value(x));
        }
        head.push(self.tail_mass(k - 1).min(1.0));
        Envelope::new(head, Tail::None)
    }
}

/// The envelope probability `mu_f` together with its support start `l_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeProbability {
    l: u64,
    pmf: Pmf,
}

impl EnvelopeProbability {
    pub fn l_f(&self) -> u64 {
        self.l
    }

    pub fn pmf(&self) -> &Pmf {
        &self.pmf
    }

    /// Tail function `F-bar(u) = 1 - F(u)` of `mu_f`.
    pub fn tail_fn(&self, u: u64) -> f64 {
        if u == 0 {
            1.0
        } else {
            self.pmf.tail_mass(u)
        }
    }

    /// `u*_f(n) = min{u >= 1 : F-bar(u) < 1/n}`.
    pub fn u_star(&self, n: u64) -> u64 {
        assert!(n >= 1);
        let thr = 1.0 / n as f64;
        let below = |u: u64| self.tail_fn(u) < thr;
        if below(1) {
            return 1;
        }
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
    }

    /// Hazard `h(u) = -ln F-bar(u)`, with `h(0) = 0`.
    pub fn hazard(&self, u: u64) -> f64 {
        -math::ln(self.tail_fn(u))
    }

    /// The inverse `U_f` of the linearly interpolated hazard.
    pub fn hazard_inverse(&self) -> HazardInverse {
        HazardInverse { mu: self.clone() }
    }
}

/// Evaluator for `U_f(t) = F^-1(1 - 1/t)` built from the hazard function
/// extended to the reals by linear interpolation between integer knots.
#[derive(Debug, Clone)]
pub struct HazardInverse {
    mu: EnvelopeProbability,
}

impl HazardInverse {
    /// `U_f(t)` for `t >= 1`.
    pub fn value(&self, t: f64) -> Result<f64, Error> {
        if !t.is_finite() || t < 1.0 {
            return Err(Error::OutOfRange("hazard inverse requires finite t >= 1"));
        }
        let ln_t = math::ln(t);
        // largest k >= 0 with h(k) <= ln t
        let le = |k: u64| self.mu.hazard(k) <= ln_t;
        let mut hi = 1u64;
        while le(hi) {
            hi *= 2;
        }
        let mut lo = if hi == 1 { 0 } else { hi / 2 };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if le(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let k = lo;
        let h_k = self.mu.hazard(k);
        let h_next = self.mu.hazard(k + 1);
        if !h_next.is_finite() {
            // finite support ends here; clamp to the knot
            return Ok(k as f64);
        }
        Ok(k as f64 + (ln_t - h_k) / (h_next - h_k))
    }
}

/// A finite partition of the alphabet.
///
/// `Tail { k }` is the tail partition `{1}, ..., {k-1}, {k, k+1, ...}`.
/// `Explicit` lists disjoint finite cells covering `1..residual_start-1`
/// plus the residual cell `{residual_start, ...}`.
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionSpec {
    Tail { k: u64 },
    Explicit { cells: Vec<Vec<u64>>, residual_start: u64 },
}

impl PartitionSpec {
    pub fn tail(k: u64) -> Result<Self, Error> {
        if k < 2 {
            return Err(Error::InvalidPartition("tail partition needs k >= 2"));
        }
        Ok(PartitionSpec::Tail { k })
    }

    pub fn explicit(cells: Vec<Vec<u64>>, residual_start: u64) -> Result<Self, Error> {
        if residual_start < 1 {
            return Err(Error::InvalidPartition("residual cell must start at 1 or later"));
        }
        let mut seen = alloc::vec![false; residual_start as usize - 1];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::InvalidPartition("empty cell"));
            }
            for &x in cell {
                if x == 0 || x >= residual_start {
                    return Err(Error::InvalidPartition("cell element outside initial segment"));
                }
                if seen[x as usize - 1] {
                    return Err(Error::InvalidPartition("cells overlap"));
                }
                seen[x as usize - 1] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPartition("cells do not cover the initial segment"));
        }
        Ok(PartitionSpec::Explicit { cells, residual_start })
    }

    /// Number of cells including the residual cell.
    pub fn cell_count(&self) -> u64 {
        match self {
            PartitionSpec::Tail { k } => *k,
            PartitionSpec::Explicit { cells, .. } => cells.len() as u64 + 1,
        }
    }

    fn for_each_cell_mass<F: FnMut(f64)>(&self, pmf: &Pmf, mut f: F) {
        match self {
            PartitionSpec::Tail { k } => {
                for x in 1..*k {
                    f(pmf.mass(x));
                }
                f(pmf.tail_mass(k - 1));
            }
            PartitionSpec::Explicit { cells, residual_start } => {
                for cell in cells {
                    f(cell.iter().map(|&x| pmf.mass(x)).sum());
                }
                f(pmf.tail_mass(residual_start - 1));
            }
        }
    }

    pub fn cell_masses(&self, pmf: &Pmf) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.cell_count() as usize);
        self.for_each_cell_mass(pmf, |m| out.push(m));
        out
    }
}
