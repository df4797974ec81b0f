//! Building the synchronization message `M = [M1, M2, M3]`.
//!
//! `M1` holds the VT syndrome of every block, `M2` the VT syndrome of every
//! chunk-string (the j-th chunk of each block, concatenated) and `M3` the
//! parity syndrome of `X` under the configured linear code.

use serde::{Deserialize, Serialize};

use crate::bits::BitSeq;
use crate::error::{Error, Result};
use crate::gf::{ParityMatrix, Symbol};
use crate::params::CodeParams;
use crate::vt::vt_syndrome;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SyncMessage {
    /// Block syndromes, each in `0..=n_b`.
    pub m1: Vec<usize>,
    /// Chunk-string syndromes, each in `0..=n_c * l1`.
    pub m2: Vec<usize>,
    /// Parity syndrome: GF(2^n_c) symbols for Reed-Solomon, bits otherwise.
    pub m3: Vec<Symbol>,
}

impl SyncMessage {
    /// `M3` expanded to bits, symbols MSB-first.
    pub fn m3_bits(&self, params: &CodeParams) -> BitSeq {
        let width = params.parity_symbol_bits();
        let bits = self
            .m3
            .iter()
            .flat_map(|&s| (0..width).rev().map(move |b| ((s >> b) & 1) as u8))
            .collect();
        BitSeq::from_vec(bits).expect("binary")
    }

    pub(crate) fn check_shape(&self, params: &CodeParams) -> Result<()> {
        let shape = |what: &str, expected: usize, actual: usize| {
            if expected == actual {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "message has {actual} {what} entries, parameters require {expected}"
                )))
            }
        };
        shape("M1", params.l1(), self.m1.len())?;
        shape("M2", params.l2(), self.m2.len())?;
        shape("M3", params.parity_len(), self.m3.len())?;
        if let Some(v) = self.m1.iter().find(|&&v| v > params.n_b()) {
            return Err(Error::InvalidParams(format!("block syndrome {v} exceeds n_b")));
        }
        if let Some(v) = self.m2.iter().find(|&&v| v > params.chunk_string_len()) {
            return Err(Error::InvalidParams(format!("chunk-string syndrome {v} exceeds n_c * l1")));
        }
        let limit = 1usize << params.parity_symbol_bits();
        if let Some(v) = self.m3.iter().find(|&&v| v as usize >= limit) {
            return Err(Error::InvalidParams(format!("parity symbol {v} out of range")));
        }
        Ok(())
    }
}

fn check_len(x: &[u8], params: &CodeParams) -> Result<()> {
    if x.len() == params.n() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: params.n(),
            actual: x.len(),
        })
    }
}

/// The `i`-th block (0-indexed) of `x`.
pub fn block_of(x: &[u8], i: usize, params: &CodeParams) -> Result<BitSeq> {
    check_len(x, params)?;
    if i >= params.l1() {
        return Err(Error::IndexOutOfRange { index: i, len: params.l1() });
    }
    let n_b = params.n_b();
    BitSeq::from_vec(x[i * n_b..(i + 1) * n_b].to_vec())
}

/// The `j`-th chunk-string (0-indexed): chunk `j` of every block in order.
pub fn chunk_string_of(x: &[u8], j: usize, params: &CodeParams) -> Result<BitSeq> {
    check_len(x, params)?;
    if j >= params.l2() {
        return Err(Error::IndexOutOfRange { index: j, len: params.l2() });
    }
    BitSeq::from_vec(chunk_string_unchecked(x, j, params))
}

pub(crate) fn chunk_string_unchecked(x: &[u8], j: usize, params: &CodeParams) -> Vec<u8> {
    let (n_c, n_b) = (params.n_c(), params.n_b());
    (0..params.l1())
        .flat_map(|i| {
            let start = i * n_b + j * n_c;
            x[start..start + n_c].iter().copied()
        })
        .collect()
}

/// Maps `x` onto the columns of the parity matrix: one GF(2^n_c) symbol per
/// chunk (first bit most significant) for Reed-Solomon, one bit per column
/// for binary codes.
pub fn parity_vector(x: &[u8], params: &CodeParams) -> Vec<Symbol> {
    match params.code() {
        crate::params::LinearCode::ReedSolomon { .. } => x
            .chunks_exact(params.n_c())
            .map(|chunk| chunk.iter().fold(0, |acc, &b| (acc << 1) | b as Symbol))
            .collect(),
        crate::params::LinearCode::RandomBinary { .. } => x.iter().map(|&b| b as Symbol).collect(),
    }
}

/// A code instance: parameters plus the materialized parity matrix.
#[derive(Debug, Clone)]
pub struct SyncCode {
    params: CodeParams,
    matrix: ParityMatrix,
}

impl SyncCode {
    pub fn new(params: CodeParams) -> Result<Self> {
        let matrix = params.parity_matrix()?;
        Ok(Self { params, matrix })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn matrix(&self) -> &ParityMatrix {
        &self.matrix
    }

    pub fn encode(&self, x: &[u8]) -> Result<SyncMessage> {
        check_len(x, &self.params)?;
        if x.iter().any(|&b| b > 1) {
            return Err(Error::InvalidBits("input contains a value other than 0 or 1".into()));
        }
        let p = &self.params;
        let n_b = p.n_b();
        let m1 = x.chunks_exact(n_b).map(|b| vt_syndrome(b).value).collect();
        let m2 = (0..p.l2())
            .map(|j| vt_syndrome(&chunk_string_unchecked(x, j, p)).value)
            .collect();
        let m3 = self.matrix.syndrome(&parity_vector(x, p))?;
        Ok(SyncMessage { m1, m2, m3 })
    }

    /// True when `x` satisfies every block, chunk-string and parity constraint.
    pub fn satisfies(&self, x: &[u8], msg: &SyncMessage) -> bool {
        let p = &self.params;
        if x.len() != p.n() {
            return false;
        }
        let blocks_ok = x
            .chunks_exact(p.n_b())
            .zip(&msg.m1)
            .all(|(b, &s)| vt_syndrome(b).value == s);
        blocks_ok
            && (0..p.l2()).all(|j| vt_syndrome(&chunk_string_unchecked(x, j, p)).value == msg.m2[j])
            && self.matrix.syndrome_masked(&parity_vector(x, p), &[]) == msg.m3
    }
}

/// One-shot encode; builds the parity matrix on every call.
pub fn encode(x: &[u8], params: &CodeParams) -> Result<SyncMessage> {
    SyncCode::new(*params)?.encode(x)
}
