//! The coded-block container.
//!
//! Layout (all multi-byte integers little-endian):
//!
//! ```text
//! offset  size  field
//! 0       4     magic "ALWC"
//! 4       1     version = 1
//! 5       4     n  (block length, u32)
//! 9       4     k  (truncation size, u32)
//! 13      1     coder id (0 = static, 1 = KT)
//! 14      8     payload_bits (u64)
//! 22      -     payload, zero-padded to a byte boundary
//! ```
//!
//! Files may concatenate any number of blocks back to back.

use alloc::vec::Vec;

use super::model::MAX_K;
use super::CodecError;

pub const MAGIC: [u8; 4] = *b"ALWC";
pub const VERSION: u8 = 1;
pub const HEADER_BYTES: usize = 22;
/// Largest block length; longer inputs are split into independent blocks.
pub const MAX_BLOCK_LEN: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub struct CodedBlock {
    pub n: u32,
    pub k: u32,
    pub coder_id: u8,
    pub payload_bits: u64,
    pub payload: Vec<u8>,
}

impl CodedBlock {
    pub fn payload_bytes(&self) -> usize {
        self.payload.len()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_BYTES + self.payload.len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.k.to_le_bytes());
        out.push(self.coder_id);
        out.extend_from_slice(&self.payload_bits.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    /// Parses one block from the front of `bytes`; returns it with the
    /// number of bytes consumed.
    pub fn parse(bytes: &[u8]) -> Result<(CodedBlock, usize), CodecError> {
        if bytes.len() < HEADER_BYTES {
            return Err(CodecError::Truncated);
        }
        if bytes[0..4] != MAGIC {
            return Err(CodecError::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(CodecError::BadVersion(bytes[4]));
        }
        let n = u32::from_le_bytes(bytes[5..9].try_into().unwrap());
        let k = u32::from_le_bytes(bytes[9..13].try_into().unwrap());
        let coder_id = bytes[13];
        let payload_bits = u64::from_le_bytes(bytes[14..22].try_into().unwrap());
        if n > MAX_BLOCK_LEN {
            return Err(CodecError::BlockTooLarge);
        }
        if !(2..=MAX_K).contains(&k) {
            return Err(CodecError::InvalidK);
        }
        if coder_id > 1 {
            return Err(CodecError::UnknownCoder(coder_id));
        }
        // a terminated non-empty block carries at least 2 bits and at most
        // 64 bits per symbol plus termination slack
        if payload_bits > 64 * n as u64 + 64 {
            return Err(CodecError::LengthMismatch);
        }
        let payload_len = payload_bits.div_ceil(8) as usize;
        if bytes.len() < HEADER_BYTES + payload_len {
            return Err(CodecError::Truncated);
        }
        let payload = bytes[HEADER_BYTES..HEADER_BYTES + payload_len].to_vec();
        Ok((CodedBlock { n, k, coder_id, payload_bits, payload }, HEADER_BYTES + payload_len))
    }

    /// Parses a whole buffer of concatenated blocks.
    pub fn parse_all(mut bytes: &[u8]) -> Result<Vec<CodedBlock>, CodecError> {
        let mut out = Vec::new();
        while !bytes.is_empty() {
            let (block, used) = CodedBlock::parse(bytes)?;
            out.push(block);
            bytes = &bytes[used..];
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_block() -> CodedBlock {
        CodedBlock { n: 3, k: 4, coder_id: 1, payload_bits: 10, payload: alloc::vec![0xAB, 0xC0] }
    }

    #[test]
    fn header_layout_is_bit_exact() {
        let b = sample_block();
        let bytes = b.to_bytes();
        assert_eq!(&bytes[0..4], b"ALWC");
        assert_eq!(bytes[4], 1);
        assert_eq!(bytes.len(), HEADER_BYTES + 2);
        let (parsed, used) = CodedBlock::parse(&bytes).unwrap();
        assert_eq!(used, bytes.len());
        assert_eq!(parsed, b);
    }

    #[test]
    fn payload_byte_invariant() {
        let b = sample_block();
        let len8 = 8 * b.payload.len() as u64;
        assert!(b.payload_bits <= len8 && len8 < b.payload_bits + 8);
    }

    #[test]
    fn rejects_tampering() {
        let mut bytes = sample_block().to_bytes();
        bytes[0] = b'X';
        assert!(matches!(CodedBlock::parse(&bytes), Err(CodecError::BadMagic)));
        let mut bytes = sample_block().to_bytes();
        bytes[4] = 9;
        assert!(matches!(CodedBlock::parse(&bytes), Err(CodecError::BadVersion(9))));
        let bytes = sample_block().to_bytes();
        assert!(matches!(CodedBlock::parse(&bytes[..bytes.len() - 1]), Err(CodecError::Truncated)));
        assert!(matches!(CodedBlock::parse(&bytes[..10]), Err(CodecError::Truncated)));
    }

    #[test]
    fn concatenated_blocks() {
        let b = sample_block();
        let mut bytes = b.to_bytes();
        bytes.extend_from_slice(&b.to_bytes());
        let blocks = CodedBlock::parse_all(&bytes).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0], blocks[1]);
    }
}
