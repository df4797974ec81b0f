use std::fmt;

use crate::error::{Error, Result};

/// Field element of GF(2^m), stored as the coefficient vector of a
/// polynomial over GF(2) (bit `i` is the coefficient of `x^i`).
pub type Symbol = u16;

/// Default reduction polynomials, indexed by degree. Bit `i` set means the
/// term `x^i` is present.
///
/// Degrees 4, 6 and 7 use `x^m + x + 1`; the degree-4 choice reproduces the
/// worked Reed-Solomon example (`alpha^4 = 3`, `alpha^9 = 10`).
const PRIMITIVE_POLYS: [u32; 17] = [
    0,
    0b11,                  // x + 1
    0b111,                 // x^2 + x + 1
    0b1011,                // x^3 + x + 1
    0b1_0011,              // x^4 + x + 1
    0b10_0101,             // x^5 + x^2 + 1
    0b100_0011,            // x^6 + x + 1
    0b1000_0011,           // x^7 + x + 1
    0x11D,                 // x^8 + x^4 + x^3 + x^2 + 1
    0x211,                 // x^9 + x^4 + 1
    0x409,                 // x^10 + x^3 + 1
    0x805,                 // x^11 + x^2 + 1
    0x1053,                // x^12 + x^6 + x^4 + x + 1
    0x201B,                // x^13 + x^4 + x^3 + x + 1
    0x4443,                // x^14 + x^10 + x^6 + x + 1
    0x8003,                // x^15 + x + 1
    0x1_100B,              // x^16 + x^12 + x^3 + x + 1
];

/// The primitive polynomial used for GF(2^m), if `m` is supported (1..=16).
pub fn primitive_poly(m: u32) -> Option<u32> {
    PRIMITIVE_POLYS.get(m as usize).copied().filter(|&p| p != 0)
}

/// GF(2^m) with log/antilog tables over the primitive element `alpha = x`
/// (the integer 2; for m = 1 it reduces to 1).
#[derive(Clone)]
pub struct GaloisField {
    m: u32,
    poly: u32,
    // exp has 2 * order entries so products of logs never need reduction.
    exp: Vec<Symbol>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(m: u32) -> Result<Self> {
        let poly = primitive_poly(m)
            .ok_or_else(|| Error::InvalidParams(format!("GF(2^{m}) is not supported (1..=16)")))?;
        Self::with_poly(m, poly)
    }

    /// Builds the field for an explicit reduction polynomial, which must be
    /// primitive.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(1..=16).contains(&m) || poly >> m != 1 {
            return Err(Error::InvalidParams(format!(
                "polynomial {poly:#x} does not have degree {m}"
            )));
        }
        let size = 1usize << m;
        let order = size - 1;
        let mut exp = vec![0; 2 * order];
        let mut log = vec![0; size];
        let mut seen = vec![false; size];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if seen[x as usize] {
                return Err(Error::InvalidParams(format!(
                    "polynomial {poly:#x} is not primitive over GF(2)"
                )));
            }
            seen[x as usize] = true;
            *slot = x as Symbol;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Self { m, poly, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Multiplicative group order, `2^m - 1`.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        debug_assert!((a as usize) < self.size() && (b as usize) < self.size());
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Symbol) -> Option<Symbol> {
        if a == 0 {
            None
        } else {
            let order = self.order() as u32;
            Some(self.exp[((order - self.log[a as usize]) % order) as usize])
        }
    }

    pub fn div(&self, a: Symbol, b: Symbol) -> Option<Symbol> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `alpha^e`.
    pub fn alpha_pow(&self, e: usize) -> Symbol {
        self.exp[e % self.order()]
    }

    /// Reference shift-and-add multiplication, independent of the tables.
    pub fn mul_slow(&self, a: Symbol, b: Symbol) -> Symbol {
        let (mut a, mut b) = (a as u32, b as u32);
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.m) != 0 {
                a ^= self.poly;
            }
        }
        acc as Symbol
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.poly == other.poly
    }
}

impl Eq for GaloisField {}
