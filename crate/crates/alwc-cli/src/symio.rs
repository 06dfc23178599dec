//! Symbol-file formats: newline-separated decimal text, or a raw stream
//! of little-endian 32-bit symbols. Symbols are positive integers.

use std::fs;
use std::io::Write;

use crate::args::FormatArg;
use crate::CliError;

pub fn read_symbols(path: &str, format: FormatArg) -> Result<Vec<u64>, CliError> {
    match format {
        FormatArg::Text => {
            let content = fs::read_to_string(path)?;
            let mut out = Vec::new();
            for (lineno, line) in content.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let v: u64 = line.parse().map_err(|_| {
                    CliError::Data(format!("{path}:{}: not a decimal symbol: `{line}`", lineno + 1))
                })?;
                if v == 0 {
                    return Err(CliError::Data(format!(
                        "{path}:{}: symbols start at 1",
                        lineno + 1
                    )));
                }
                out.push(v);
            }
            Ok(out)
        }
        FormatArg::Bin32 => {
            let bytes = fs::read(path)?;
            if bytes.len() % 4 != 0 {
                return Err(CliError::Data(format!(
                    "{path}: length {} is not a multiple of 4",
                    bytes.len()
                )));
            }
            let mut out = Vec::with_capacity(bytes.len() / 4);
            for chunk in bytes.chunks_exact(4) {
                let v = u32::from_le_bytes(chunk.try_into().unwrap());
                if v == 0 {
                    return Err(CliError::Data(format!("{path}: symbols start at 1")));
                }
                out.push(v as u64);
            }
            Ok(out)
        }
    }
}

pub fn write_symbols(path: &str, format: FormatArg, symbols: &[u64]) -> Result<(), CliError> {
    match format {
        FormatArg::Text => {
            let mut buf = String::with_capacity(symbols.len() * 4);
            for &s in symbols {
                buf.push_str(&s.to_string());
                buf.push('\n');
            }
            fs::write(path, buf)?;
        }
        FormatArg::Bin32 => {
            let mut buf = Vec::with_capacity(symbols.len() * 4);
            for &s in symbols {
                let v: u32 = s
                    .try_into()
                    .map_err(|_| CliError::Data(format!("symbol {s} exceeds the bin32 range")))?;
                buf.extend_from_slice(&v.to_le_bytes());
            }
            fs::write(path, buf)?;
        }
    }
    Ok(())
}

/// Writes a CSV atomically enough for our purposes: build in memory,
/// write once. Keeps reruns byte-identical.
pub fn write_text(path: &str, content: &str) -> Result<(), CliError> {
    let mut f = fs::File::create(path)?;
    f.write_all(content.as_bytes())?;
    Ok(())
}
