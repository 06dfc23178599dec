//! Integer arithmetic coder over a 62-bit interval with pending-bit carry
//! handling and two-bit termination.
//!
//! Symbol models hand in exact integer cumulative ranges
//! `[cum_lo, cum_hi) / total`. After renormalization the interval width
//! always exceeds 2^60, so with `total <= 2^40` the per-symbol rounding
//! loss is below `2^-20 log2 e` bits and emitted length stays within the
//! `ideal + 2` budget on any realistic block.

use super::bitio::{BitReader, BitWriter};

const TOP: u64 = 1 << 62;
const HALF: u64 = TOP / 2;
const QUARTER: u64 = TOP / 4;
const THREE_QUARTER: u64 = 3 * (TOP / 4);

/// Largest model denominator the coder accepts without precision loss
/// concerns.
pub const MAX_TOTAL: u64 = 1 << 40;

pub struct Encoder {
    low: u64,
    high: u64,
    pending: u64,
    out: BitWriter,
}

impl Encoder {
    pub fn new() -> Self {
        Encoder { low: 0, high: TOP, pending: 0, out: BitWriter::new() }
    }

    #[inline]
    fn emit(&mut self, bit: bool) {
        self.out.push(bit);
        for _ in 0..self.pending {
            self.out.push(!bit);
        }
        self.pending = 0;
    }

    pub fn encode(&mut self, cum_lo: u64, cum_hi: u64, total: u64) {
        debug_assert!(cum_lo < cum_hi && cum_hi <= total);
        debug_assert!(total <= MAX_TOTAL);
        let range = (self.high - self.low) as u128;
        self.high = self.low + ((range * cum_hi as u128) / total as u128) as u64;
        self.low += ((range * cum_lo as u128) / total as u128) as u64;
        loop {
            if self.high <= HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high <= THREE_QUARTER {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high <<= 1;
        }
    }

    /// Terminates the stream so any zero-padded continuation decodes the
    /// same symbols, then returns the packed payload and exact bit count.
    pub fn finish(mut self) -> (alloc::vec::Vec<u8>, u64) {
        self.pending += 1;
        if self.low < QUARTER {
            self.emit(false);
        } else {
            self.emit(true);
        }
        self.out.into_parts()
    }

    /// Payload for an empty block: no bits at all.
    pub fn finish_empty(self) -> (alloc::vec::Vec<u8>, u64) {
        debug_assert_eq!(self.out.bit_count(), 0);
        self.out.into_parts()
    }
}

pub struct Decoder<'a> {
    low: u64,
    high: u64,
    value: u64,
    reader: BitReader<'a>,
}

impl<'a> Decoder<'a> {
    pub fn new(payload: &'a [u8], payload_bits: u64) -> Self {
        let mut reader = BitReader::new(payload, payload_bits);
        let mut value = 0u64;
        for _ in 0..62 {
            value = (value << 1) | reader.next() as u64;
        }
        Decoder { low: 0, high: TOP, value, reader }
    }

    /// Cumulative position of the next symbol under the given denominator.
    /// Clamped so corrupt payloads select some symbol instead of panicking.
    pub fn target(&self, total: u64) -> u64 {
        let range = (self.high - self.low) as u128;
        let off = self.value.saturating_sub(self.low) as u128;
        let t = ((off + 1) * total as u128 - 1) / range;
        (t as u64).min(total - 1)
    }

    /// Mirrors [`Encoder::encode`] for the symbol chosen from [`Self::target`].
    pub fn consume(&mut self, cum_lo: u64, cum_hi: u64, total: u64) {
        let range = (self.high - self.low) as u128;
        self.high = self.low + ((range * cum_hi as u128) / total as u128) as u64;
        self.low += ((range * cum_lo as u128) / total as u128) as u64;
        loop {
            if self.high <= HALF {
                // nothing to subtract
            } else if self.low >= HALF {
                self.low -= HALF;
                self.high -= HALF;
                self.value -= HALF;
            } else if self.low >= QUARTER && self.high <= THREE_QUARTER {
                self.low -= QUARTER;
                self.high -= QUARTER;
                self.value -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high <<= 1;
            self.value = (self.value << 1) | self.reader.next() as u64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::SplitMix64;
    use alloc::vec::Vec;

    fn roundtrip(cums: &[u64], symbols: &[usize]) {
        let total = *cums.last().unwrap();
        let mut enc = Encoder::new();
        for &s in symbols {
            enc.encode(cums[s], cums[s + 1], total);
        }
        let (payload, bits) = if symbols.is_empty() { enc.finish_empty() } else { enc.finish() };
        let mut dec = Decoder::new(&payload, bits);
        for &s in symbols {
            let t = dec.target(total);
            let found = cums.partition_point(|&c| c <= t) - 1;
            assert_eq!(found, s, "symbol mismatch");
            dec.consume(cums[found], cums[found + 1], total);
        }
    }

    #[test]
    fn exhaustive_short_binary_blocks() {
        let cums = [0u64, 3, 10];
        for len in 0..=12usize {
            for pat in 0..(1u32 << len) {
                let syms: Vec<usize> = (0..len).map(|i| ((pat >> i) & 1) as usize).collect();
                roundtrip(&cums, &syms);
            }
        }
    }

    #[test]
    fn random_blocks_skewed_models() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            let k = 2 + (rng.next_u64() % 16) as usize;
            let mut cums = alloc::vec![0u64];
            for _ in 0..k {
                let w = 1 + rng.next_u64() % 1000;
                cums.push(cums.last().unwrap() + w);
            }
            let n = (rng.next_u64() % 300) as usize;
            let total = *cums.last().unwrap();
            let syms: Vec<usize> = (0..n)
                .map(|_| {
                    let t = rng.next_u64() % total;
                    cums.partition_point(|&c| c <= t) - 1
                })
                .collect();
            roundtrip(&cums, &syms);
        }
    }
}
