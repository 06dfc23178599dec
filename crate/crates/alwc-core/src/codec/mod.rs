//! The two-stage almost-lossless codec: a symbol-wise tail quantizer
//! followed by a bit-exact arithmetic coder driven by a static or
//! Krichevsky-Trofimov model, plus rate/distortion accounting and the
//! code-length entropy estimator.

mod arith;
mod bitio;
mod block;
mod model;

pub use block::{CodedBlock, HEADER_BYTES, MAGIC, MAX_BLOCK_LEN, VERSION};
pub use model::{CoderModel, KtState, StaticModel, MAX_K, STATIC_TOTAL};

use alloc::vec::Vec;
use core::fmt;

use crate::dist::Pmf;
use crate::math;

#[derive(Debug, Clone, PartialEq)]
pub enum CodecError {
    BadMagic,
    BadVersion(u8),
    UnknownCoder(u8),
    Truncated,
    LengthMismatch,
    BlockTooLarge,
    InvalidK,
    InvalidTau,
    /// Entropy-estimation block sizes must be positive and increasing.
    InvalidBlockSizes,
    SymbolOutOfRange { symbol: u64, k: u32 },
    /// Static coding requested without source statistics.
    MissingModel,
    /// Block header does not match the supplied model.
    ModelMismatch,
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::BadMagic => write!(f, "bad container magic"),
            CodecError::BadVersion(v) => write!(f, "unsupported container version {v}"),
            CodecError::UnknownCoder(c) => write!(f, "unknown coder id {c}"),
            CodecError::Truncated => write!(f, "truncated container"),
            CodecError::LengthMismatch => write!(f, "payload length inconsistent with header"),
            CodecError::BlockTooLarge => write!(f, "block length exceeds 2^20 symbols"),
            CodecError::InvalidK => write!(f, "truncation size must be in [2, 2^20]"),
            CodecError::InvalidTau => write!(f, "schedule exponent must lie in (0, 1)"),
            CodecError::InvalidBlockSizes => {
                write!(f, "block sizes must be positive and strictly increasing")
            }
            CodecError::SymbolOutOfRange { symbol, k } => {
                write!(f, "symbol {symbol} outside quantized alphabet 1..={k}")
            }
            CodecError::MissingModel => write!(f, "static coder needs source statistics"),
            CodecError::ModelMismatch => write!(f, "model does not match block header"),
        }
    }
}

impl core::error::Error for CodecError {}

/// Which second-stage model to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoderKind {
    Static,
    Kt,
}

/// The tail quantizer pair: `quantize(x) = min(x, k)` and the residual
/// cell keeps its smallest element `k` as prototype, so `dequantize` is
/// the identity on `{1..k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailQuantizer {
    k: u32,
}

impl TailQuantizer {
    pub fn new(k: u32) -> Result<Self, CodecError> {
        if !(2..=MAX_K).contains(&k) {
            return Err(CodecError::InvalidK);
        }
        Ok(TailQuantizer { k })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn quantize(&self, x: u64) -> u32 {
        debug_assert!(x >= 1);
        x.min(self.k as u64) as u32
    }

    #[inline]
    pub fn dequantize(&self, i: u32) -> u64 {
        debug_assert!(i >= 1 && i <= self.k);
        i as u64
    }

    pub fn quantize_block(&self, xs: &[u64]) -> Vec<u32> {
        xs.iter().map(|&x| self.quantize(x)).collect()
    }

    pub fn reconstruct(&self, ys: &[u32]) -> Vec<u64> {
        ys.iter().map(|&y| self.dequantize(y)).collect()
    }
}

/// Largest block length accepted by `encode_block`.
fn check_block(y: &[u32], k: u32) -> Result<(), CodecError> {
    if y.len() as u64 > MAX_BLOCK_LEN as u64 {
        return Err(CodecError::BlockTooLarge);
    }
    for &s in y {
        if s < 1 || s > k {
            return Err(CodecError::SymbolOutOfRange { symbol: s as u64, k });
        }
    }
    Ok(())
}

/// Encodes quantized indices into a prefix-free block. The emitted bit
/// count never exceeds the ideal code length by more than the 2-bit
/// termination overhead.
pub fn encode_block(model: &CoderModel, y: &[u32]) -> Result<CodedBlock, CodecError> {
    let k = model.k();
    check_block(y, k)?;
    let mut enc = arith::Encoder::new();
    match model {
        CoderModel::Static(m) => {
            for &s in y {
                let (lo, hi) = m.range(s);
                enc.encode(lo, hi, STATIC_TOTAL);
            }
        }
        CoderModel::Kt { k } => {
            let mut state = KtState::new(*k)?;
            for &s in y {
                let (lo, hi) = state.range(s);
                enc.encode(lo, hi, state.weight_total());
                state.update(s);
            }
        }
    }
    let (payload, payload_bits) = if y.is_empty() { enc.finish_empty() } else { enc.finish() };
    Ok(CodedBlock {
        n: y.len() as u32,
        k,
        coder_id: model.coder_id(),
        payload_bits,
        payload,
    })
}

/// Exact inverse of [`encode_block`]. The KT decoder rebuilds its counts
/// from its own output, so no side information beyond the header travels
/// with the block.
pub fn decode_block(block: &CodedBlock, model: &CoderModel) -> Result<Vec<u32>, CodecError> {
    if model.k() != block.k || model.coder_id() != block.coder_id {
        return Err(CodecError::ModelMismatch);
    }
    if block.payload.len() as u64 != block.payload_bits.div_ceil(8) {
        return Err(CodecError::LengthMismatch);
    }
    let n = block.n as usize;
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let mut dec = arith::Decoder::new(&block.payload, block.payload_bits);
    match model {
        CoderModel::Static(m) => {
            for _ in 0..n {
                let t = dec.target(STATIC_TOTAL);
                let s = m.symbol_from_target(t);
                let (lo, hi) = m.range(s);
                dec.consume(lo, hi, STATIC_TOTAL);
                out.push(s);
            }
        }
        CoderModel::Kt { k } => {
            let mut state = KtState::new(*k)?;
            for _ in 0..n {
                let total = state.weight_total();
                let t = dec.target(total);
                let s = state.symbol_from_target(t);
                let (lo, hi) = state.range(s);
                dec.consume(lo, hi, total);
                state.update(s);
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// `-log2 P_model(y^n)`: the real-valued ideal code length, for
/// redundancy accounting without integer-bit quantization.
pub fn ideal_code_length(model: &CoderModel, y: &[u32]) -> Result<f64, CodecError> {
    check_block(y, model.k())?;
    let mut bits = 0.0f64;
    match model {
        CoderModel::Static(m) => {
            for &s in y {
                bits += m.bits(s);
            }
        }
        CoderModel::Kt { k } => {
            let mut state = KtState::new(*k)?;
            for &s in y {
                bits += state.bits(s);
                state.update(s);
            }
        }
    }
    Ok(bits)
}

/// Truncation schedule `k_n = max(2, ceil(n^tau))` for `tau in (0, 1)`.
pub fn schedule_k(n: u64, tau: f64) -> Result<u32, CodecError> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(CodecError::InvalidTau);
    }
    if n == 0 {
        return Err(CodecError::BlockTooLarge);
    }
    let raw = math::powf(n as f64, tau);
    // snap to integers so exact powers do not ceil upward
    let snapped = math::round(raw);
    let k = if math::abs(raw - snapped) < 1e-9 { snapped } else { math::ceil(raw) };
    let k = k.max(2.0);
    if k > MAX_K as f64 {
        return Err(CodecError::InvalidK);
    }
    Ok(k as u32)
}

/// Exact expected Hamming distortion of the tail quantizer under `pmf`:
/// `(F-bar(k), F-bar(k-1))`, the exact value with prototype `k` and the
/// cell-mass bound.
pub fn expected_distortion(pmf: &Pmf, k: u64) -> (f64, f64) {
    assert!(k >= 2);
    (pmf.tail_mass(k), pmf.tail_mass(k - 1))
}

/// Rate/distortion accounting for one encoded block.
#[derive(Debug, Clone, PartialEq)]
pub struct CodecStats {
    pub n: usize,
    pub k: u32,
    pub payload_bits: u64,
    pub header_bytes: usize,
    /// Payload bits per symbol (header excluded; see `header_bytes`).
    pub emp_rate: f64,
    /// Empirical per-letter Hamming distortion.
    pub emp_distortion: f64,
    pub entropy_bits: Option<f64>,
    pub restricted_entropy_bits: Option<f64>,
    pub redundancy_vs_h: Option<f64>,
    pub redundancy_vs_restricted: Option<f64>,
}

/// Quantize, encode, decode, reconstruct, and account for one block.
///
/// When the source pmf is known it drives the static model (if requested)
/// and the theoretical reference columns of the stats; with `None` only
/// the KT coder is available and the reference columns stay empty.
pub fn two_stage_encode(
    source: Option<&Pmf>,
    xs: &[u64],
    k: u32,
    coder: CoderKind,
) -> Result<(CodedBlock, Vec<u64>, CodecStats), CodecError> {
    let quantizer = TailQuantizer::new(k)?;
    let model = match coder {
        CoderKind::Kt => CoderModel::Kt { k },
        CoderKind::Static => {
            let pmf = source.ok_or(CodecError::MissingModel)?;
            let q = pmf.quantized(k as u64).map_err(|_| CodecError::InvalidK)?;
            CoderModel::Static(StaticModel::from_quantized_pmf(&q, k)?)
        }
    };
    let y = quantizer.quantize_block(xs);
    let block = encode_block(&model, &y)?;
    let decoded = decode_block(&block, &model)?;
    let reconstruction = quantizer.reconstruct(&decoded);
    let n = xs.len();
    let mismatches = xs
        .iter()
        .zip(reconstruction.iter())
        .filter(|(a, b)| a != b)
        .count();
    let emp_rate = if n == 0 { 0.0 } else { block.payload_bits as f64 / n as f64 };
    let emp_distortion = if n == 0 { 0.0 } else { mismatches as f64 / n as f64 };
    let (entropy_bits, restricted) = match source {
        Some(pmf) => {
            let h = pmf.entropy_bits();
            let hr = pmf
                .quantized(k as u64)
                .map(|q| q.entropy_bits())
                .unwrap_or(f64::NAN);
            (Some(h), Some(hr))
        }
        None => (None, None),
    };
    let stats = CodecStats {
        n,
        k,
        payload_bits: block.payload_bits,
        header_bytes: HEADER_BYTES,
        emp_rate,
        emp_distortion,
        entropy_bits,
        restricted_entropy_bits: restricted,
        redundancy_vs_h: entropy_bits.map(|h| emp_rate - h),
        redundancy_vs_restricted: restricted.map(|hr| emp_rate - hr),
    };
    Ok((block, reconstruction, stats))
}

/// Code-length entropy estimation: encode prefixes of one stream with the
/// universal (KT) coder at `k_n = schedule_k(n, tau)` and report the
/// per-letter payload length `H-hat_n` for each block size.
pub fn entropy_estimate(
    stream: &[u64],
    tau: f64,
    block_sizes: &[usize],
) -> Result<Vec<(usize, f64)>, CodecError> {
    let mut out = Vec::with_capacity(block_sizes.len());
    let mut prev = 0usize;
    for &n in block_sizes {
        if n == 0 || n <= prev {
            return Err(CodecError::InvalidBlockSizes);
        }
        if n > stream.len() {
            return Err(CodecError::Truncated);
        }
        prev = n;
        let k = schedule_k(n as u64, tau)?;
        let quantizer = TailQuantizer::new(k)?;
        let y = quantizer.quantize_block(&stream[..n]);
        let block = encode_block(&CoderModel::Kt { k }, &y)?;
        out.push((n, block.payload_bits as f64 / n as f64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{abs, SplitMix64};

    #[test]
    fn quantizer_basics() {
        let q = TailQuantizer::new(4).unwrap();
        assert_eq!(q.quantize_block(&[1, 2, 3, 4, 5, 9]), alloc::vec![1, 2, 3, 4, 4, 4]);
        assert_eq!(q.quantize_block(&[1, 2, 3]), alloc::vec![1, 2, 3]);
        let xs = [1u64, 2, 7, 3, 4, 100];
        let y = q.quantize_block(&xs);
        let recon = q.reconstruct(&y);
        let dist = xs.iter().zip(&recon).filter(|(a, b)| a != b).count();
        assert_eq!(dist, xs.iter().filter(|&&x| x > 4).count());
        assert!(TailQuantizer::new(1).is_err());
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(schedule_k(1024, 0.5).unwrap(), 32);
        assert_eq!(schedule_k(10, 0.5).unwrap(), 4);
        assert_eq!(schedule_k(4, 0.5).unwrap(), 2);
        let mut prev = 0;
        for n in [4u64, 16, 64, 256, 1024, 4096] {
            let k = schedule_k(n, 0.4).unwrap();
            assert!(k >= prev);
            prev = k;
        }
        assert!(schedule_k(100, 0.0).is_err());
        assert!(schedule_k(100, 1.0).is_err());
    }

    #[test]
    fn expected_distortion_examples() {
        let g = Pmf::geometric(0.5).unwrap();
        let (exact, bound) = expected_distortion(&g, 4);
        assert!(abs(exact - 0.0625) < 1e-15);
        assert!(abs(bound - 0.125) < 1e-15);
        let fin = Pmf::explicit(alloc::vec![0.5, 0.5]).unwrap();
        assert_eq!(expected_distortion(&fin, 3), (0.0, 0.0));
        // the cell-mass bound is loose when the support touches k
        assert_eq!(expected_distortion(&fin, 2), (0.0, 0.5));
    }

    #[test]
    fn empty_block() {
        let model = CoderModel::Kt { k: 4 };
        let block = encode_block(&model, &[]).unwrap();
        assert_eq!(block.payload_bits, 0);
        assert!(block.payload.is_empty());
        assert_eq!(decode_block(&block, &model).unwrap(), Vec::<u32>::new());
    }

    #[test]
    fn static_uniform_lengths() {
        let m = CoderModel::Static(StaticModel::from_probs(&[0.25; 4]).unwrap());
        let block = encode_block(&m, &[1, 2, 3, 4]).unwrap();
        assert!(abs(ideal_code_length(&m, &[1, 2, 3, 4]).unwrap() - 8.0) < 1e-12);
        assert!((8..=10).contains(&block.payload_bits));
        assert_eq!(decode_block(&block, &m).unwrap(), alloc::vec![1, 2, 3, 4]);
        // uniform k=2: ideal length is exactly n bits
        let m2 = CoderModel::Static(StaticModel::from_probs(&[0.5, 0.5]).unwrap());
        let y: Vec<u32> = (0..1024).map(|i| 1 + (i % 2) as u32).collect();
        assert!(abs(ideal_code_length(&m2, &y).unwrap() - 1024.0) < 1e-9);
        let b = encode_block(&m2, &y).unwrap();
        assert!((1024..=1026).contains(&b.payload_bits));
    }

    #[test]
    fn kt_lengths() {
        let m = CoderModel::Kt { k: 2 };
        let y = alloc::vec![1u32, 1, 1, 1];
        let ideal = ideal_code_length(&m, &y).unwrap();
        assert!(abs(ideal - 1.8707169830550336) < 1e-12);
        let block = encode_block(&m, &y).unwrap();
        assert!(block.payload_bits as f64 <= ideal + 2.0);
        assert_eq!(decode_block(&block, &m).unwrap(), y);
        // additivity of the static ideal length
        let ms = CoderModel::Static(StaticModel::from_probs(&[0.75, 0.25]).unwrap());
        let a = ideal_code_length(&ms, &[1, 2, 1]).unwrap();
        let b = ideal_code_length(&ms, &[2, 1]).unwrap();
        let ab = ideal_code_length(&ms, &[1, 2, 1, 2, 1]).unwrap();
        assert!(abs(ab - a - b) < 1e-12);
    }

    #[test]
    fn coder_tightness_on_random_blocks() {
        let mut rng = SplitMix64::new(2024);
        for trial in 0..60 {
            let k = [2u32, 3, 4, 16, 256][trial % 5];
            let n = [1usize, 10, 500][trial % 3];
            let y: Vec<u32> = (0..n).map(|_| 1 + (rng.next_u64() % k as u64) as u32).collect();
            for model in [
                CoderModel::Kt { k },
                CoderModel::Static(StaticModel::from_probs(&random_probs(&mut rng, k)).unwrap()),
            ] {
                let ideal = ideal_code_length(&model, &y).unwrap();
                let block = encode_block(&model, &y).unwrap();
                let slack = block.payload_bits as f64 - ideal;
                assert!((0.0..=2.0).contains(&slack), "slack {slack} outside [0,2]");
                assert_eq!(decode_block(&block, &model).unwrap(), y);
                // container determinism
                assert_eq!(encode_block(&model, &y).unwrap().to_bytes(), block.to_bytes());
            }
        }
    }

    fn random_probs(rng: &mut SplitMix64, k: u32) -> Vec<f64> {
        let mut v: Vec<f64> = (0..k).map(|_| rng.next_f64() + 1e-3).collect();
        // occasional hard zero exercises the static floor
        if k > 2 {
            v[0] = 0.0;
        }
        let s: f64 = v.iter().sum();
        v.iter().map(|x| x / s).collect()
    }

    #[test]
    fn out_of_range_symbols_rejected() {
        let m = CoderModel::Kt { k: 4 };
        assert!(matches!(
            encode_block(&m, &[1, 5]),
            Err(CodecError::SymbolOutOfRange { symbol: 5, k: 4 })
        ));
        assert!(matches!(encode_block(&m, &[0]), Err(CodecError::SymbolOutOfRange { .. })));
    }

    #[test]
    fn two_stage_roundtrip_and_stats() {
        let g = Pmf::geometric(0.5).unwrap();
        let xs = g.sample(5, 4096);
        let (block, recon, stats) = two_stage_encode(Some(&g), &xs, 32, CoderKind::Kt).unwrap();
        let clipped: Vec<u64> = xs.iter().map(|&x| x.min(32)).collect();
        assert_eq!(recon, clipped);
        let dist = xs.iter().filter(|&&x| x > 32).count() as f64 / xs.len() as f64;
        assert!(abs(stats.emp_distortion - dist) < 1e-15);
        assert!(stats.emp_rate >= 1.9 && stats.emp_rate < 2.6);
        assert_eq!(stats.header_bytes, HEADER_BYTES);
        assert_eq!(block.n, 4096);
        // identity below the truncation level
        let small: Vec<u64> = xs.iter().map(|&x| x.min(8)).collect();
        let (_, recon, stats) = two_stage_encode(Some(&g), &small, 8, CoderKind::Static).unwrap();
        assert_eq!(recon, small);
        assert_eq!(stats.emp_distortion, 0.0);
        // redundancy identity
        let r_h = stats.redundancy_vs_h.unwrap();
        let r_res = stats.redundancy_vs_restricted.unwrap();
        let h = stats.entropy_bits.unwrap();
        let hr = stats.restricted_entropy_bits.unwrap();
        assert!(abs((r_res - r_h) - (h - hr)) < 1e-12);
        // static without source statistics is an error
        assert!(matches!(
            two_stage_encode(None, &small, 8, CoderKind::Static),
            Err(CodecError::MissingModel)
        ));
    }

    #[test]
    fn entropy_estimate_shrinks_toward_entropy() {
        let d1 = Pmf::delta(1).unwrap();
        let stream = d1.sample(1, 4096);
        let est = entropy_estimate(&stream, 0.4, &[4096]).unwrap();
        assert!(est[0].1 < 0.05, "constant stream estimate {}", est[0].1);
    }
}
