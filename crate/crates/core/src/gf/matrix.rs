use std::sync::Arc;

use super::erasure::{self, ErasureSolution};
use super::field::{GaloisField, Symbol};
use crate::error::{Error, Result};

/// xorshift64* generator (Vigna, 2014): shifts 12/25/27 and output
/// multiplier `0x2545F4914F6CDD1D`.
///
/// The initial state is `splitmix64(seed)`, replaced by
/// `0x9E3779B97F4A7C15` in the (single) case where that is zero. Random
/// parity matrices are drawn from this generator one entry per draw, using
/// the top output bit, in row-major order.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = splitmix64(seed);
        Self {
            state: if state == 0 { 0x9E37_79B9_7F4A_7C15 } else { state },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn next_bit(&mut self) -> u8 {
        (self.next_u64() >> 63) as u8
    }
}

pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityKind {
    ReedSolomon,
    RandomBinary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Row-major `rows x cols` symbols.
    ReedSolomon { entries: Vec<Symbol> },
    /// Row-major bit-packed rows; bit `j % 64` of word `j / 64` is column `j`.
    RandomBinary { seed: u64, words: usize, data: Vec<u64> },
}

/// Parity-check matrix `H` of the linear code whose coset carries `M3 = H X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityMatrix {
    rows: usize,
    cols: usize,
    field: Arc<GaloisField>,
    repr: Repr,
}

impl ParityMatrix {
    /// Vandermonde parity checks `H[i][j] = alpha^(i*j)` over GF(2^m).
    pub fn reed_solomon(m: u32, rows: usize, cols: usize) -> Result<Self> {
        let field = GaloisField::new(m)?;
        Self::reed_solomon_in(Arc::new(field), rows, cols)
    }

    pub fn reed_solomon_in(field: Arc<GaloisField>, rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 {
            return Err(Error::InvalidParams("Reed-Solomon code needs at least one parity row".into()));
        }
        if cols == 0 || cols > field.order() {
            return Err(Error::InvalidParams(format!(
                "Reed-Solomon length {cols} must lie in 1..={} over GF(2^{})",
                field.order(),
                field.degree()
            )));
        }
        let order = field.order();
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i * j) % order))
            .map(|e| field.alpha_pow(e))
            .collect();
        Ok(Self {
            rows,
            cols,
            field,
            repr: Repr::ReedSolomon { entries },
        })
    }

    /// A `rows x cols` matrix of fair bits drawn from [`XorShift64Star`].
    pub fn random_binary(rows: usize, cols: usize, seed: u64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParams(format!(
                "random parity matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        let words = cols.div_ceil(64);
        let mut data = vec![0u64; rows * words];
        let mut rng = XorShift64Star::new(seed);
        for i in 0..rows {
            for j in 0..cols {
                if rng.next_bit() == 1 {
                    data[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            field: Arc::new(GaloisField::new(1)?),
            repr: Repr::RandomBinary { seed, words, data },
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> ParityKind {
        match self.repr {
            Repr::ReedSolomon { .. } => ParityKind::ReedSolomon,
            Repr::RandomBinary { .. } => ParityKind::RandomBinary,
        }
    }

    /// The field of the entries; GF(2) for random binary matrices.
    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn seed(&self) -> Option<u64> {
        match self.repr {
            Repr::RandomBinary { seed, .. } => Some(seed),
            Repr::ReedSolomon { .. } => None,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Symbol {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        match &self.repr {
            Repr::ReedSolomon { entries } => entries[i * self.cols + j],
            Repr::RandomBinary { words, data, .. } => {
                ((data[i * words + j / 64] >> (j % 64)) & 1) as Symbol
            }
        }
    }

    pub fn row(&self, i: usize) -> Vec<Symbol> {
        (0..self.cols).map(|j| self.entry(i, j)).collect()
    }

    /// `H x` over the matrix's field. `x` holds one field element per column.
    pub fn syndrome(&self, x: &[Symbol]) -> Result<Vec<Symbol>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: x.len(),
            });
        }
        if let Some(&bad) = x.iter().find(|&&v| v as usize >= self.field.size()) {
            return Err(Error::InvalidParams(format!(
                "symbol {bad} is not in GF(2^{})",
                self.field.degree()
            )));
        }
        Ok(self.syndrome_masked(x, &[]))
    }

    /// `H x` with the listed columns treated as zero.
    pub(crate) fn syndrome_masked(&self, x: &[Symbol], skip: &[usize]) -> Vec<Symbol> {
        match &self.repr {
            Repr::ReedSolomon { entries } => {
                let mut masked;
                let x = if skip.is_empty() {
                    x
                } else {
                    masked = x.to_vec();
                    for &j in skip {
                        masked[j] = 0;
                    }
                    &masked[..]
                };
                entries
                    .chunks_exact(self.cols)
                    .map(|row| {
                        row.iter()
                            .zip(x)
                            .fold(0, |acc, (&h, &v)| acc ^ self.field.mul(h, v))
                    })
                    .collect()
            }
            Repr::RandomBinary { words, data, .. } => {
                let mut packed = vec![0u64; *words];
                for (j, &v) in x.iter().enumerate() {
                    if v & 1 == 1 {
                        packed[j / 64] |= 1 << (j % 64);
                    }
                }
                for &j in skip {
                    packed[j / 64] &= !(1 << (j % 64));
                }
                data.chunks_exact(*words)
                    .map(|row| {
                        let ones: u32 = row
                            .iter()
                            .zip(&packed)
                            .map(|(a, b)| (a & b).count_ones())
                            .sum();
                        (ones & 1) as Symbol
                    })
                    .collect()
            }
        }
    }

    /// Solves for the values at `erased` so that `H x = target`. Entries of
    /// `values` at erased positions are ignored.
    pub fn solve_erasures(
        &self,
        values: &[Symbol],
        erased: &[usize],
        target: &[Symbol],
    ) -> Result<ErasureSolution> {
        if values.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: values.len(),
            });
        }
        if target.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                actual: target.len(),
            });
        }
        let mut seen = vec![false; self.cols];
        for &j in erased {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: self.cols,
                });
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParams(format!("erased position {j} listed twice")));
            }
        }
        let known = self.syndrome_masked(values, erased);
        let residual: Vec<Symbol> = target.iter().zip(&known).map(|(t, k)| t ^ k).collect();
        let system: Vec<Vec<Symbol>> = (0..self.rows)
            .map(|i| erased.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        Ok(erasure::solve(&self.field, system, residual))
    }
}
