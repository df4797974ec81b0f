//! Varshamov-Tenengolts syndromes and single-insertion recovery.
//!
//! The syndrome of `w_1 .. w_l` is `sum(j * w_j) mod (l + 1)` with 1-indexed
//! positions. The `l + 1` residue classes partition `{0,1}^l` and each class
//! corrects a single deletion, so a string of length `l - 1` together with a
//! target residue determines exactly one length-`l` supersequence.

use std::ops::RangeInclusive;

use crate::bits::BitSeq;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VtSyndrome {
    pub value: usize,
    pub modulus: usize,
}

impl VtSyndrome {
    pub fn new(value: usize, modulus: usize) -> Result<Self> {
        if modulus == 0 || value >= modulus {
            return Err(Error::InvalidParams(format!(
                "VT syndrome {value} is not a residue mod {modulus}"
            )));
        }
        Ok(Self { value, modulus })
    }

    /// Number of bits needed to transmit a value in `0..modulus`.
    pub fn field_width(modulus: usize) -> usize {
        bit_width(modulus)
    }
}

/// `ceil(log2(modulus))`.
pub(crate) fn bit_width(modulus: usize) -> usize {
    if modulus <= 1 {
        0
    } else {
        (usize::BITS - (modulus - 1).leading_zeros()) as usize
    }
}

/// Position-weighted sum `sum((j + 1) * w_j)` over 0-indexed `j`, not reduced.
#[inline]
pub(crate) fn weighted_sum(bits: &[u8]) -> usize {
    bits.iter()
        .enumerate()
        .map(|(j, &b)| (j + 1) * b as usize)
        .sum()
}

pub fn vt_syndrome(bits: &[u8]) -> VtSyndrome {
    let modulus = bits.len() + 1;
    VtSyndrome {
        value: weighted_sum(bits) % modulus,
        modulus,
    }
}

/// Output of [`vt_insert_decode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restoration {
    pub restored: BitSeq,
    /// 0-indexed positions in `restored` where the inserted bit may sit. Every
    /// index in this run yields the same string.
    pub positions: RangeInclusive<usize>,
}

/// Recovers the unique supersequence of `received` (one bit longer) whose VT
/// syndrome equals `target`.
pub fn vt_insert_decode(received: &[u8], target: VtSyndrome) -> Result<Restoration> {
    if target.modulus != received.len() + 2 {
        return Err(Error::InvalidParams(format!(
            "target modulus {} does not match received length {} (expected {})",
            target.modulus,
            received.len(),
            received.len() + 2
        )));
    }
    if target.value >= target.modulus {
        return Err(Error::InvalidParams(format!(
            "target {} is not a residue mod {}",
            target.value, target.modulus
        )));
    }
    let (restored, positions) = insert_decode_raw(received, target.value);
    Ok(Restoration {
        restored: BitSeq::from_vec(restored).expect("restored bits are binary"),
        positions,
    })
}

/// Unchecked core of [`vt_insert_decode`]; `target < received.len() + 2`.
///
/// With `w` ones in the received string and `delta` the syndrome deficit,
/// a 0 inserted with exactly `delta` ones to its right covers `delta <= w`;
/// otherwise a 1 inserted with `delta - w - 1` zeros to its left.
pub(crate) fn insert_decode_raw(received: &[u8], target: usize) -> (Vec<u8>, RangeInclusive<usize>) {
    let len = received.len() + 1;
    let modulus = len + 1;
    let weight = received.iter().filter(|&&b| b == 1).count();
    let delta = (target + modulus - weighted_sum(received) % modulus) % modulus;

    let (bit, at) = if delta <= weight {
        // Insert a 0 just after the (delta + 1)-th one counted from the right,
        // or at the very front when delta == weight.
        let mut ones_right = 0;
        let mut at = 0;
        for idx in (0..received.len()).rev() {
            if ones_right == delta {
                at = idx + 1;
                break;
            }
            ones_right += received[idx] as usize;
        }
        (0u8, at)
    } else {
        let zeros_left = delta - weight - 1;
        let mut seen = 0;
        let mut at = received.len();
        for (idx, &b) in received.iter().enumerate() {
            if seen == zeros_left {
                at = idx;
                break;
            }
            seen += (b == 0) as usize;
        }
        (1u8, at)
    };

    let mut lo = at;
    while lo > 0 && received[lo - 1] == bit {
        lo -= 1;
    }
    let mut hi = at;
    while hi < received.len() && received[hi] == bit {
        hi += 1;
    }

    let mut restored = Vec::with_capacity(len);
    restored.extend_from_slice(&received[..at]);
    restored.push(bit);
    restored.extend_from_slice(&received[at..]);
    (restored, lo..=hi)
}
