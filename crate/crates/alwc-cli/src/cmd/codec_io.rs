//! `encode` / `decode`: symbol files to coded-block containers and back.

use std::fs;

use alwc_core::codec::{
    decode_block, encode_block, CodedBlock, CoderModel, StaticModel, TailQuantizer, MAX_BLOCK_LEN,
};

use super::parse_source;
use crate::args::{CoderArg, DecodeArgs, EncodeArgs};
use crate::{symio, CliError};

fn static_model_for(source_spec: Option<&str>, k: u32) -> Result<CoderModel, CliError> {
    let spec = source_spec.ok_or_else(|| {
        CliError::Usage("the static coder needs --source to rebuild its model".into())
    })?;
    let pmf = parse_source(spec)?;
    let quantized = pmf.quantized(k as u64)?;
    Ok(CoderModel::Static(StaticModel::from_quantized_pmf(&quantized, k)?))
}

pub fn encode(a: EncodeArgs) -> Result<(), CliError> {
    if a.n == 0 || a.n > MAX_BLOCK_LEN {
        return Err(CliError::Usage(format!(
            "block length must be in 1..={MAX_BLOCK_LEN}"
        )));
    }
    let symbols = symio::read_symbols(&a.input, a.format)?;
    let quantizer = TailQuantizer::new(a.k)?;
    let mut out = Vec::new();
    let mut lost = 0usize;
    let mut payload_bits = 0u64;
    let mut blocks = 0usize;
    for chunk in symbols.chunks(a.n as usize) {
        let model = match a.coder {
            CoderArg::Kt => CoderModel::Kt { k: a.k },
            CoderArg::Static => static_model_for(a.source.as_deref(), a.k)?,
        };
        let y = quantizer.quantize_block(chunk);
        lost += chunk.iter().filter(|&&x| x > a.k as u64).count();
        let block = encode_block(&model, &y)?;
        payload_bits += block.payload_bits;
        blocks += 1;
        out.extend_from_slice(&block.to_bytes());
    }
    fs::write(&a.out, out)?;
    eprintln!(
        "encoded {} symbols in {} block(s): {} payload bits, {} symbol(s) above k={}",
        symbols.len(),
        blocks,
        payload_bits,
        lost,
        a.k
    );
    Ok(())
}

pub fn decode(a: DecodeArgs) -> Result<(), CliError> {
    let bytes = fs::read(&a.input)?;
    let blocks = CodedBlock::parse_all(&bytes)?;
    let mut symbols = Vec::new();
    for block in &blocks {
        let model = match block.coder_id {
            1 => CoderModel::Kt { k: block.k },
            0 => static_model_for(a.source.as_deref(), block.k)?,
            other => return Err(CliError::Data(format!("unknown coder id {other}"))),
        };
        let quantizer = TailQuantizer::new(block.k)?;
        let y = decode_block(block, &model)?;
        symbols.extend(quantizer.reconstruct(&y));
    }
    symio::write_symbols(&a.out, a.format, &symbols)?;
    eprintln!("decoded {} block(s) into {} symbols", blocks.len(), symbols.len());
    Ok(())
}
