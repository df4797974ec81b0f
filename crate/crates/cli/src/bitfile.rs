//! Reading and writing bit sequences as files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use mlsync_core::BitSeq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BitFormat {
    /// Text if the file holds only `0`, `1`, whitespace and `_`, raw otherwise.
    Auto,
    /// Bytes read MSB-first; the file length in bits is the sequence length.
    Raw,
    /// ASCII `0`/`1` characters; whitespace and `_` are ignored.
    Text,
}

fn looks_like_text(bytes: &[u8]) -> bool {
    bytes.iter().any(|b| matches!(b, b'0' | b'1'))
        && bytes
            .iter()
            .all(|b| matches!(b, b'0' | b'1' | b'_' | b' ' | b'\t' | b'\r' | b'\n'))
}

/// Reads a bit sequence. `bits` trims a raw file to that many leading bits.
/// Returns the sequence and the format actually used.
pub fn read_bits(path: &Path, format: BitFormat, bits: Option<usize>) -> Result<(BitSeq, BitFormat)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let format = match format {
        BitFormat::Auto if looks_like_text(&bytes) => BitFormat::Text,
        BitFormat::Auto => BitFormat::Raw,
        other => other,
    };
    let seq = match format {
        BitFormat::Text => {
            let text = std::str::from_utf8(&bytes)
                .with_context(|| format!("{} is not a text bit file", path.display()))?;
            text.parse::<BitSeq>()
                .with_context(|| format!("{} is not a text bit file", path.display()))?
        }
        _ => {
            let mut all = BitSeq::from_bytes_msb(&bytes).into_vec();
            if let Some(n) = bits {
                if n > all.len() {
                    bail!("{} holds {} bits, fewer than --bits {n}", path.display(), all.len());
                }
                all.truncate(n);
            }
            BitSeq::from_vec(all)?
        }
    };
    if let (Some(n), BitFormat::Text) = (bits, format) {
        if seq.len() != n {
            bail!("{} holds {} bits, --bits says {n}", path.display(), seq.len());
        }
    }
    Ok((seq, format))
}

pub fn write_bits(path: &Path, seq: &BitSeq, format: BitFormat) -> Result<()> {
    let bytes = match format {
        BitFormat::Raw => {
            if !seq.len().is_multiple_of(8) {
                bail!("{} bits cannot be written as a raw file", seq.len());
            }
            seq.to_bytes_msb()
        }
        _ => format!("{seq}\n").into_bytes(),
    };
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_text() {
        assert!(looks_like_text(b"0101 1100\n"));
        assert!(!looks_like_text(b"\n"));
        assert!(!looks_like_text(&[0xff, 0x00]));
    }

    #[test]
    fn round_trips_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let seq: BitSeq = "1011 0001 1111 0000".parse().unwrap();
        for format in [BitFormat::Raw, BitFormat::Text] {
            let path = dir.path().join("x");
            write_bits(&path, &seq, format).unwrap();
            let (back, used) = read_bits(&path, BitFormat::Auto, None).unwrap();
            assert_eq!(back, seq);
            assert_eq!(used, format);
        }
        let odd: BitSeq = "101".parse().unwrap();
        assert!(write_bits(&dir.path().join("y"), &odd, BitFormat::Raw).is_err());
    }

    #[test]
    fn trims_raw_padding() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x");
        std::fs::write(&path, [0b1010_0000]).unwrap();
        let (seq, _) = read_bits(&path, BitFormat::Raw, Some(3)).unwrap();
        assert_eq!(seq.to_string(), "101");
        assert!(read_bits(&path, BitFormat::Raw, Some(9)).is_err());
    }
}
