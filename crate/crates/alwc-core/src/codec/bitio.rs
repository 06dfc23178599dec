//! MSB-first bit packing for coder payloads.

use alloc::vec::Vec;

#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    nbits: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.nbits.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 1 << (7 - (self.nbits % 8));
        }
        self.nbits += 1;
    }

    pub fn bit_count(&self) -> u64 {
        self.nbits
    }

    /// Zero-padded bytes plus the exact bit count.
    pub fn into_parts(self) -> (Vec<u8>, u64) {
        (self.bytes, self.nbits)
    }
}

/// Reads bits MSB-first; positions past the recorded bit count read as 0,
/// which is exactly the padding convention the arithmetic decoder needs.
#[derive(Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    nbits: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8], nbits: u64) -> Self {
        debug_assert!(nbits.div_ceil(8) <= bytes.len() as u64);
        BitReader { bytes, nbits, pos: 0 }
    }

    #[inline]
    pub fn next(&mut self) -> bool {
        let bit = if self.pos < self.nbits {
            let byte = self.bytes[(self.pos / 8) as usize];
            (byte >> (7 - (self.pos % 8))) & 1 == 1
        } else {
            false
        };
        self.pos += 1;
        bit
    }
}
