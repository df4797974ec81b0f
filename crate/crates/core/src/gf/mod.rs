//! Finite-field arithmetic, parity-check matrices and erasure solving.

mod erasure;
mod field;
mod matrix;

pub use erasure::{AffineSolutions, ErasureSolution};
pub use field::{primitive_poly, GaloisField, Symbol};
pub use matrix::{ParityKind, ParityMatrix, XorShift64Star};
pub(crate) use matrix::splitmix64;
