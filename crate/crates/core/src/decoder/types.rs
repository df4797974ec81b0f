use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitSeq;

/// Caps on decoder work. Exceeding any of them yields a truncated report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoderLimits {
    /// Nodes visited across the block tree and every chunk tree.
    pub max_tree_nodes: usize,
    /// Largest list kept after the block tree, the chunk trees and the
    /// erasure step.
    pub max_candidates: usize,
    /// Largest affine solution space enumerated for a single candidate.
    pub max_affine_enumeration: usize,
}

impl Default for DecoderLimits {
    fn default() -> Self {
        Self {
            max_tree_nodes: 1_000_000,
            max_candidates: 100_000,
            max_affine_enumeration: 1 << 20,
        }
    }
}

/// Tracks tree-node consumption and whether any cap was hit.
#[derive(Debug, Clone)]
pub struct Budget {
    limits: DecoderLimits,
    nodes: usize,
    truncated: bool,
}

impl Budget {
    pub fn new(limits: DecoderLimits) -> Self {
        Self {
            limits,
            nodes: 0,
            truncated: false,
        }
    }

    pub fn limits(&self) -> &DecoderLimits {
        &self.limits
    }

    pub fn nodes_used(&self) -> usize {
        self.nodes
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    /// Charges one tree node; false once the node budget is exhausted.
    pub(crate) fn visit(&mut self) -> bool {
        if self.nodes >= self.limits.max_tree_nodes {
            self.truncated = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    /// False (and marks truncation) when a list would exceed `max_candidates`.
    pub(crate) fn admit(&mut self, list_len: usize) -> bool {
        if list_len >= self.limits.max_candidates {
            self.truncated = true;
            false
        } else {
            true
        }
    }
}

/// Number of deletions assigned to each block.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BlockPattern(pub Vec<usize>);

impl BlockPattern {
    pub fn zeros(l1: usize) -> Self {
        Self(vec![0; l1])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Debug for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<usize>> for BlockPattern {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// `l1 x l2` per-chunk deletion counts; row `i` is block `i`, column `j`
/// chunk-string `j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChunkMatrix {
    rows: usize,
    cols: usize,
    a: Vec<usize>,
}

impl ChunkMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from its rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged chunk matrix");
        Self {
            rows: rows.len(),
            cols,
            a: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: usize) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.a[i * self.cols..(i + 1) * self.cols].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    pub fn total(&self) -> usize {
        self.a.iter().sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.a.chunks(self.cols.max(1)).map(<[usize]>::to_vec).collect()
    }

    /// Row-major start offset of every chunk in a sequence where chunk
    /// `(i, j)` has `n_c - a_ij` bits; the final entry is the total length.
    pub(crate) fn chunk_offsets(&self, n_c: usize) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.a.len() + 1);
        let mut at = 0;
        for &a in &self.a {
            offsets.push(at);
            at += n_c - a;
        }
        offsets.push(at);
        offsets
    }
}

impl fmt::Debug for ChunkMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// A partially restored received sequence with its block pattern (after
/// the block tree and block fixing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCandidate {
    pub y: BitSeq,
    pub pattern: BlockPattern,
    /// Blocks restored by single-insertion decoding.
    pub restored: Vec<bool>,
}

/// A partially restored sequence with a chunk-deletion matrix (after the
/// chunk tree and iterative correction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkCandidate {
    pub y: BitSeq,
    pub matrix: ChunkMatrix,
}

/// Result of a full decode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeReport {
    /// Distinct reconstructions, sorted.
    pub final_list: Vec<BitSeq>,
    pub k: usize,
    /// Block-deletion patterns after the block tree.
    pub r1: usize,
    /// (sequence, chunk matrix) pairs after the chunk trees.
    pub r3: usize,
    /// Pairs surviving iterative correction.
    pub r4: usize,
    /// Length-n sequences produced by erasure solving.
    pub r5: usize,
    /// Size of the final list.
    pub r6: usize,
    pub truncated: bool,
    pub tree_nodes: usize,
    pub limits: DecoderLimits,
}
