use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::ParityMatrix;
use crate::vt::bit_width;

/// The linear code whose parity syndrome forms the third message part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinearCode {
    /// Reed-Solomon parity checks over GF(2^n_c), one symbol per chunk.
    ReedSolomon { parity_symbols: usize },
    /// `checks` equiprobable binary parity checks drawn from `seed`.
    RandomBinary { checks: usize, seed: u64 },
}

impl LinearCode {
    pub fn short_name(&self) -> &'static str {
        match self {
            LinearCode::ReedSolomon { .. } => "rs",
            LinearCode::RandomBinary { .. } => "random",
        }
    }
}

/// Geometry of a two-layer synchronization code: `l1` blocks of `l2`
/// chunks, each chunk `n_c` bits, plus a linear code over the whole string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    n_c: usize,
    l1: usize,
    l2: usize,
    code: LinearCode,
}

impl CodeParams {
    pub fn new(n_c: usize, l1: usize, l2: usize, code: LinearCode) -> Result<Self> {
        let params = Self { n_c, l1, l2, code };
        params.validate()?;
        Ok(params)
    }

    /// Shorthand for a Reed-Solomon code with `parity_symbols` check symbols.
    pub fn reed_solomon(n_c: usize, l1: usize, l2: usize, parity_symbols: usize) -> Result<Self> {
        Self::new(n_c, l1, l2, LinearCode::ReedSolomon { parity_symbols })
    }

    pub fn random_binary(n_c: usize, l1: usize, l2: usize, checks: usize, seed: u64) -> Result<Self> {
        Self::new(n_c, l1, l2, LinearCode::RandomBinary { checks, seed })
    }

    /// Builds parameters from a total length `n`, which must equal
    /// `n_c * l1 * l2`.
    pub fn with_length(n: usize, n_c: usize, l1: usize, l2: usize, code: LinearCode) -> Result<Self> {
        let params = Self::new(n_c, l1, l2, code)?;
        if params.n() != n {
            return Err(Error::InvalidParams(format!(
                "n = {n} is not n_c * l1 * l2 = {}",
                params.n()
            )));
        }
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n_c == 0 || self.l1 == 0 || self.l2 == 0 {
            return bad(format!(
                "n_c, l1 and l2 must be positive (got {}, {}, {})",
                self.n_c, self.l1, self.l2
            ));
        }
        if self.n_c > u8::MAX as usize || self.l1 > u16::MAX as usize || self.l2 > u16::MAX as usize {
            return bad("n_c must fit in 8 bits and l1, l2 in 16 bits".into());
        }
        let n = self
            .n_c
            .checked_mul(self.l1)
            .and_then(|v| v.checked_mul(self.l2))
            .filter(|&n| n <= u32::MAX as usize);
        let Some(n) = n else {
            return bad("n = n_c * l1 * l2 must fit in 32 bits".into());
        };
        match self.code {
            LinearCode::ReedSolomon { parity_symbols } => {
                if parity_symbols == 0 {
                    return bad("Reed-Solomon code needs at least one parity symbol".into());
                }
                if self.n_c > 16 {
                    return bad(format!("GF(2^{}) symbols are not supported (n_c <= 16)", self.n_c));
                }
                let chunks = self.l1 * self.l2;
                if chunks > (1 << self.n_c) - 1 {
                    return bad(format!(
                        "Reed-Solomon over GF(2^{}) has length at most {}, but there are {chunks} chunks",
                        self.n_c,
                        (1 << self.n_c) - 1
                    ));
                }
                if parity_symbols * self.n_c > u16::MAX as usize {
                    return bad("parity bit count must fit in 16 bits".into());
                }
            }
            LinearCode::RandomBinary { checks, .. } => {
                if checks == 0 || checks > u16::MAX as usize {
                    return bad(format!("binary parity check count {checks} must lie in 1..=65535"));
                }
            }
        }
        debug_assert!(n > 0);
        Ok(())
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    pub fn code(&self) -> LinearCode {
        self.code
    }

    /// Total length `n = n_c * l1 * l2`.
    pub fn n(&self) -> usize {
        self.n_c * self.l1 * self.l2
    }

    /// Block length `n_b = n_c * l2`.
    pub fn n_b(&self) -> usize {
        self.n_c * self.l2
    }

    /// Chunk-string length `n_c * l1`.
    pub fn chunk_string_len(&self) -> usize {
        self.n_c * self.l1
    }

    pub fn chunk_count(&self) -> usize {
        self.l1 * self.l2
    }

    /// Number of parity bits `z`.
    pub fn parity_bits(&self) -> usize {
        match self.code {
            LinearCode::ReedSolomon { parity_symbols } => parity_symbols * self.n_c,
            LinearCode::RandomBinary { checks, .. } => checks,
        }
    }

    /// Number of entries in `M3` (symbols for RS, bits otherwise).
    pub fn parity_len(&self) -> usize {
        match self.code {
            LinearCode::ReedSolomon { parity_symbols } => parity_symbols,
            LinearCode::RandomBinary { checks, .. } => checks,
        }
    }

    /// Bits per `M3` entry.
    pub fn parity_symbol_bits(&self) -> usize {
        match self.code {
            LinearCode::ReedSolomon { .. } => self.n_c,
            LinearCode::RandomBinary { .. } => 1,
        }
    }

    pub fn block_syndrome_bits(&self) -> usize {
        bit_width(self.n_b() + 1)
    }

    pub fn chunk_syndrome_bits(&self) -> usize {
        bit_width(self.chunk_string_len() + 1)
    }

    /// `l1 * ceil(log2(n_b + 1)) + l2 * ceil(log2(n_c l1 + 1)) + z`.
    pub fn message_bits(&self) -> usize {
        self.l1 * self.block_syndrome_bits() + self.l2 * self.chunk_syndrome_bits() + self.parity_bits()
    }

    /// Synchronization rate: message bits per bit of `X`.
    pub fn sync_rate(&self) -> f64 {
        self.message_bits() as f64 / self.n() as f64
    }

    pub fn parity_matrix(&self) -> Result<ParityMatrix> {
        match self.code {
            LinearCode::ReedSolomon { parity_symbols } => {
                ParityMatrix::reed_solomon(self.n_c as u32, parity_symbols, self.chunk_count())
            }
            LinearCode::RandomBinary { checks, seed } => ParityMatrix::random_binary(checks, self.n(), seed),
        }
    }
}

/// Free-function form of [`CodeParams::sync_rate`].
pub fn sync_rate(params: &CodeParams) -> f64 {
    params.sync_rate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_costs_51_bits() {
        let p = CodeParams::reed_solomon(4, 5, 3, 4).unwrap();
        assert_eq!(p.n(), 60);
        assert_eq!(p.n_b(), 12);
        assert_eq!(p.message_bits(), 51);
        assert_eq!(p.parity_bits(), 16);
    }

    #[test]
    fn rate_formula_matches_closed_form() {
        for (n_c, l1, l2, z) in [(4, 5, 3, 1), (6, 9, 7, 7), (3, 2, 2, 2), (5, 4, 6, 3)] {
            let p = CodeParams::reed_solomon(n_c, l1, l2, z).unwrap();
            let n = p.n() as f64;
            let closed = (z * n_c) as f64 / n
                + ((n_c * l2 + 1) as f64).log2().ceil() / (n_c * l2) as f64
                + ((n_c * l1 + 1) as f64).log2().ceil() / (n_c * l1) as f64;
            assert!((p.sync_rate() - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(CodeParams::reed_solomon(0, 5, 3, 4).is_err());
        assert!(CodeParams::reed_solomon(4, 0, 3, 4).is_err());
        assert!(CodeParams::reed_solomon(4, 5, 3, 0).is_err());
        // 16 chunks do not fit a length-15 Reed-Solomon code.
        assert!(CodeParams::reed_solomon(4, 4, 4, 1).is_err());
        assert!(CodeParams::random_binary(4, 4, 4, 0, 1).is_err());
        assert!(CodeParams::random_binary(4, 4, 4, 10, 1).is_ok());
        assert!(CodeParams::with_length(61, 4, 5, 3, LinearCode::ReedSolomon { parity_symbols: 4 }).is_err());
        assert!(CodeParams::with_length(60, 4, 5, 3, LinearCode::ReedSolomon { parity_symbols: 4 }).is_ok());
    }
}
