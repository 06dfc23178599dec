//! Symbol models for the second coding stage.
//!
//! `Static` holds fixed integer frequencies derived from known statistics;
//! `Kt` is the add-1/2 (Krichevsky-Trofimov) adaptive model, whose
//! pointwise redundancy meets the `(k-1)/2 log n` envelope the two-stage
//! scheme needs. Both hand the coder exactly the integers that define the
//! model, so ideal code lengths and emitted bits refer to the same measure.

use alloc::vec::Vec;

use super::CodecError;
use crate::dist::Pmf;
use crate::math;

/// Fixed denominator of static models: probabilities are floored at
/// `2^-32` and renormalized, so no symbol is ever undecodable.
pub const STATIC_TOTAL: u64 = 1 << 32;

/// Largest supported quantized alphabet.
pub const MAX_K: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct StaticModel {
    /// Cumulative frequencies, `cum[0] = 0`, `cum[k] = STATIC_TOTAL`.
    cum: Vec<u64>,
}

impl StaticModel {
    /// Builds integer frequencies from probabilities on `{1..k}` by
    /// rounding, flooring at 1, and settling the remainder on the largest
    /// entries (largest-first, index as tie-break) so the total is exact.
    pub fn from_probs(probs: &[f64]) -> Result<Self, CodecError> {
        let k = probs.len();
        if k < 2 || k > MAX_K as usize {
            return Err(CodecError::InvalidK);
        }
        let mut freqs: Vec<u64> = probs
            .iter()
            .map(|&p| {
                let raw = math::round(p.clamp(0.0, 1.0) * STATIC_TOTAL as f64) as u64;
                raw.max(1)
            })
            .collect();
        let mut sum: u64 = freqs.iter().sum();
        // settle the rounding remainder on the largest entries
        while sum != STATIC_TOTAL {
            let (arg, &val) = freqs
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("nonempty");
            if sum < STATIC_TOTAL {
                freqs[arg] = val + (STATIC_TOTAL - sum);
                sum = STATIC_TOTAL;
            } else {
                let cut = (sum - STATIC_TOTAL).min(val - 1);
                if cut == 0 {
                    return Err(CodecError::InvalidK);
                }
                freqs[arg] = val - cut;
                sum -= cut;
            }
        }
        let mut cum = Vec::with_capacity(k + 1);
        cum.push(0u64);
        for &f in &freqs {
            cum.push(cum.last().unwrap() + f);
        }
        Ok(StaticModel { cum })
    }

    /// Static model from a pmf already quantized onto `{1..k}`.
    pub fn from_quantized_pmf(pmf: &Pmf, k: u32) -> Result<Self, CodecError> {
        let probs: Vec<f64> = (1..=k as u64).map(|x| pmf.mass(x)).collect();
        StaticModel::from_probs(&probs)
    }

    pub fn k(&self) -> u32 {
        (self.cum.len() - 1) as u32
    }

    /// `[cum_lo, cum_hi)` of a 1-based symbol.
    #[inline]
    pub fn range(&self, sym: u32) -> (u64, u64) {
        (self.cum[sym as usize - 1], self.cum[sym as usize])
    }

    #[inline]
    pub fn symbol_from_target(&self, t: u64) -> u32 {
        // cum is strictly increasing with cum[0] = 0, so the count of
        // entries <= t is exactly the 1-based symbol owning t
        self.cum.partition_point(|&c| c <= t) as u32
    }

    /// `-log2 P(sym)` under the integer model.
    #[inline]
    pub fn bits(&self, sym: u32) -> f64 {
        let (lo, hi) = self.range(sym);
        math::log2(STATIC_TOTAL as f64) - math::log2((hi - lo) as f64)
    }
}

/// Fenwick tree over symbol counts; prefix sums drive the KT cumulative
/// ranges in `O(log k)`.
#[derive(Debug, Clone)]
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(k: usize) -> Self {
        Fenwick { tree: alloc::vec![0; k + 1] }
    }

    fn add(&mut self, mut i: usize, delta: u64) {
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum of counts for symbols `1..=i`.
    fn prefix(&self, mut i: usize) -> u64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Adaptive Krichevsky-Trofimov state: conditional probability of symbol
/// `i` after `t` symbols is `(count_i + 1/2) / (t + k/2)`; in integers,
/// weight `2 count_i + 1` out of `2t + k`.
#[derive(Debug, Clone)]
pub struct KtState {
    counts: Fenwick,
    k: u32,
    total: u64,
}

impl KtState {
    pub fn new(k: u32) -> Result<Self, CodecError> {
        if !(2..=MAX_K).contains(&k) {
            return Err(CodecError::InvalidK);
        }
        Ok(KtState { counts: Fenwick::new(k as usize), k, total: 0 })
    }

    #[inline]
    pub fn weight_total(&self) -> u64 {
        2 * self.total + self.k as u64
    }

    /// `[cum_lo, cum_hi)` of a symbol under the current counts.
    #[inline]
    pub fn range(&self, sym: u32) -> (u64, u64) {
        let below = self.counts.prefix(sym as usize - 1);
        let at = self.counts.prefix(sym as usize) - below;
        let lo = 2 * below + (sym as u64 - 1);
        (lo, lo + 2 * at + 1)
    }

    /// Largest symbol whose cumulative start does not exceed `t`.
    pub fn symbol_from_target(&self, t: u64) -> u32 {
        let (mut lo, mut hi) = (1u32, self.k);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if self.range(mid).0 <= t {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// `-log2` of the conditional probability of `sym` right now.
    #[inline]
    pub fn bits(&self, sym: u32) -> f64 {
        let (lo, hi) = self.range(sym);
        math::log2(self.weight_total() as f64) - math::log2((hi - lo) as f64)
    }

    #[inline]
    pub fn update(&mut self, sym: u32) {
        self.counts.add(sym as usize, 1);
        self.total += 1;
    }
}

/// Which model drives the second stage.
#[derive(Debug, Clone, PartialEq)]
pub enum CoderModel {
    Static(StaticModel),
    Kt { k: u32 },
}

impl CoderModel {
    pub fn k(&self) -> u32 {
        match self {
            CoderModel::Static(m) => m.k(),
            CoderModel::Kt { k } => *k,
        }
    }

    pub fn coder_id(&self) -> u8 {
        match self {
            CoderModel::Static(_) => 0,
            CoderModel::Kt { .. } => 1,
        }
    }
}
