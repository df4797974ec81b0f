//! Wire format for a synchronization message.
//!
//! ```text
//! "MLSY" | version u8 = 1 | n u32 | n_c u8 | l1 u16 | l2 u16
//!        | code kind u8 (0 = Reed-Solomon, 1 = random binary)
//!        | z (parity bits) u16 | seed u64 (0 for Reed-Solomon)
//!        | payload
//! ```
//!
//! Integers are big-endian. The payload packs `M1`, `M2` and `M3` as
//! fixed-width MSB-first fields (`ceil(log2(n_b + 1))` bits per block
//! syndrome, `ceil(log2(n_c l1 + 1))` per chunk-string syndrome, then the
//! `z` parity bits) and is zero-padded to a byte boundary.

use crate::encoder::SyncMessage;
use crate::error::{Error, ParseError, Result};
use crate::gf::Symbol;
use crate::params::{CodeParams, LinearCode};

pub const MAGIC: [u8; 4] = *b"MLSY";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 25;

struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    fn new() -> Self {
        Self { bytes: Vec::new(), len: 0 }
    }

    fn push(&mut self, value: u64, width: usize) {
        for shift in (0..width).rev() {
            if self.len.is_multiple_of(8) {
                self.bytes.push(0);
            }
            let bit = ((value >> shift) & 1) as u8;
            *self.bytes.last_mut().unwrap() |= bit << (7 - self.len % 8);
            self.len += 1;
        }
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn read(&mut self, width: usize) -> u64 {
        let mut v = 0u64;
        for _ in 0..width {
            let bit = (self.bytes[self.pos / 8] >> (7 - self.pos % 8)) & 1;
            v = (v << 1) | bit as u64;
            self.pos += 1;
        }
        v
    }
}

/// Serializes `msg` with a header describing `params`.
pub fn serialize_message(msg: &SyncMessage, params: &CodeParams) -> Result<Vec<u8>> {
    msg.check_shape(params)?;
    let mut out = Vec::with_capacity(HEADER_LEN + params.message_bits().div_ceil(8));
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(params.n() as u32).to_be_bytes());
    out.push(params.n_c() as u8);
    out.extend_from_slice(&(params.l1() as u16).to_be_bytes());
    out.extend_from_slice(&(params.l2() as u16).to_be_bytes());
    let (kind, seed) = match params.code() {
        LinearCode::ReedSolomon { .. } => (0u8, 0u64),
        LinearCode::RandomBinary { seed, .. } => (1u8, seed),
    };
    out.push(kind);
    out.extend_from_slice(&(params.parity_bits() as u16).to_be_bytes());
    out.extend_from_slice(&seed.to_be_bytes());
    debug_assert_eq!(out.len(), HEADER_LEN);

    let mut w = BitWriter::new();
    for &s in &msg.m1 {
        w.push(s as u64, params.block_syndrome_bits());
    }
    for &s in &msg.m2 {
        w.push(s as u64, params.chunk_syndrome_bits());
    }
    for &s in &msg.m3 {
        w.push(s as u64, params.parity_symbol_bits());
    }
    debug_assert_eq!(w.len, params.message_bits());
    out.extend_from_slice(&w.bytes);
    Ok(out)
}

fn header_err(msg: impl Into<String>) -> Error {
    ParseError::InvalidHeader(msg.into()).into()
}

/// Parses a message produced by [`serialize_message`].
pub fn parse_message(bytes: &[u8]) -> Result<(SyncMessage, CodeParams)> {
    if bytes.len() < HEADER_LEN {
        if bytes.len() >= 4 && bytes[..4] != MAGIC {
            return Err(ParseError::BadMagic.into());
        }
        return Err(ParseError::Truncated {
            expected: HEADER_LEN,
            actual: bytes.len(),
        }
        .into());
    }
    if bytes[..4] != MAGIC {
        return Err(ParseError::BadMagic.into());
    }
    if bytes[4] != VERSION {
        return Err(ParseError::UnsupportedVersion(bytes[4]).into());
    }
    let be16 = |at: usize| u16::from_be_bytes([bytes[at], bytes[at + 1]]) as usize;
    let n = u32::from_be_bytes(bytes[5..9].try_into().unwrap()) as usize;
    let n_c = bytes[9] as usize;
    let l1 = be16(10);
    let l2 = be16(12);
    let kind = bytes[14];
    let z = be16(15);
    let seed = u64::from_be_bytes(bytes[17..25].try_into().unwrap());

    let code = match kind {
        0 => {
            if seed != 0 {
                return Err(header_err("Reed-Solomon header carries a nonzero seed"));
            }
            if n_c == 0 || z % n_c != 0 {
                return Err(header_err(format!(
                    "z = {z} is not a whole number of {n_c}-bit symbols"
                )));
            }
            LinearCode::ReedSolomon { parity_symbols: z / n_c }
        }
        1 => LinearCode::RandomBinary { checks: z, seed },
        other => return Err(ParseError::UnknownCodeKind(other).into()),
    };
    let params = CodeParams::with_length(n, n_c, l1, l2, code).map_err(|e| header_err(e.to_string()))?;

    let payload = &bytes[HEADER_LEN..];
    let expected = params.message_bits().div_ceil(8);
    if payload.len() < expected {
        return Err(ParseError::Truncated {
            expected: HEADER_LEN + expected,
            actual: bytes.len(),
        }
        .into());
    }
    if payload.len() > expected {
        return Err(ParseError::TrailingBytes(payload.len() - expected).into());
    }

    let mut r = BitReader { bytes: payload, pos: 0 };
    let m1: Vec<usize> = (0..l1)
        .map(|_| r.read(params.block_syndrome_bits()) as usize)
        .collect();
    let m2: Vec<usize> = (0..l2)
        .map(|_| r.read(params.chunk_syndrome_bits()) as usize)
        .collect();
    let m3: Vec<Symbol> = (0..params.parity_len())
        .map(|_| r.read(params.parity_symbol_bits()) as Symbol)
        .collect();
    if r.read(expected * 8 - params.message_bits()) != 0 {
        return Err(ParseError::InvalidField("nonzero padding bits".into()).into());
    }
    if let Some(v) = m1.iter().find(|&&v| v > params.n_b()) {
        return Err(ParseError::InvalidField(format!("block syndrome {v} exceeds {}", params.n_b())).into());
    }
    if let Some(v) = m2.iter().find(|&&v| v > params.chunk_string_len()) {
        return Err(ParseError::InvalidField(format!(
            "chunk-string syndrome {v} exceeds {}",
            params.chunk_string_len()
        ))
        .into());
    }
    Ok((SyncMessage { m1, m2, m3 }, params))
}
