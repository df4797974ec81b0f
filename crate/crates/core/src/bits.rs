use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An owned binary sequence, one `u8` (0 or 1) per symbol.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSeq(Vec<u8>);

impl BitSeq {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Wraps a vector of 0/1 values, rejecting any other byte.
    pub fn from_vec(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidBits(format!(
                "value {} at index {pos} is not a bit",
                bits[pos]
            )));
        }
        Ok(Self(bits))
    }

    /// Unpacks bytes MSB-first into `8 * bytes.len()` bits.
    pub fn from_bytes_msb(bytes: &[u8]) -> Self {
        let mut bits = Vec::with_capacity(bytes.len() * 8);
        for &byte in bytes {
            for shift in (0..8).rev() {
                bits.push((byte >> shift) & 1);
            }
        }
        Self(bits)
    }

    /// Packs MSB-first, zero-padding the final byte.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | (b << (7 - i)))
            })
            .collect()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// True if `sub` can be obtained from `self` by deleting bits.
    pub fn has_subsequence(&self, sub: &[u8]) -> bool {
        let mut rest = sub.iter().peekable();
        for b in &self.0 {
            if rest.peek() == Some(&b) {
                rest.next();
            }
        }
        rest.peek().is_none()
    }

    /// Returns a copy with the bits at the given 0-indexed positions removed.
    pub fn delete_positions(&self, positions: &[usize]) -> Result<Self> {
        let mut drop = vec![false; self.len()];
        for &p in positions {
            if p >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: self.len(),
                });
            }
            drop[p] = true;
        }
        Ok(Self(
            self.0
                .iter()
                .zip(drop)
                .filter(|(_, d)| !d)
                .map(|(&b, _)| b)
                .collect(),
        ))
    }
}

impl Deref for BitSeq {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl AsRef<[u8]> for BitSeq {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl TryFrom<Vec<u8>> for BitSeq {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Self::from_vec(bits)
    }
}

impl From<BitSeq> for Vec<u8> {
    fn from(bits: BitSeq) -> Self {
        bits.0
    }
}

/// Parses `'0'`/`'1'` characters; ASCII whitespace and `_` are ignored.
impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_ascii_whitespace() || c == '_' => {}
                c => return Err(Error::InvalidBits(format!("unexpected character {c:?}"))),
            }
        }
        Ok(Self(bits))
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl serde::Serialize for BitSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq({self})")
    }
}
