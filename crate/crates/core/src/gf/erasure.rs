use std::sync::Arc;

use super::field::{GaloisField, Symbol};

/// Outcome of solving the parity equations restricted to erased positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErasureSolution {
    /// Exactly one assignment, in the order the erased positions were given.
    Unique(Vec<Symbol>),
    Inconsistent,
    /// An affine space `particular + span(basis)` of assignments.
    Affine(AffineSolutions),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutions {
    field: Arc<GaloisField>,
    particular: Vec<Symbol>,
    basis: Vec<Vec<Symbol>>,
}

impl AffineSolutions {
    pub fn particular(&self) -> &[Symbol] {
        &self.particular
    }

    pub fn basis(&self) -> &[Vec<Symbol>] {
        &self.basis
    }

    pub fn free_dimension(&self) -> usize {
        self.basis.len()
    }

    /// `2^(d * m)`, saturating.
    pub fn count(&self) -> u128 {
        let bits = self.basis.len() as u32 * self.field.degree();
        1u128.checked_shl(bits).filter(|_| bits < 128).unwrap_or(u128::MAX)
    }

    /// Enumerates every solution. The first item is the particular solution;
    /// the coefficient vector advances like an odometer, first basis vector
    /// fastest.
    pub fn iter(&self) -> impl Iterator<Item = Vec<Symbol>> + '_ {
        let size = self.field.size() as Symbol;
        let mut coeffs = vec![0 as Symbol; self.basis.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mut sol = self.particular.clone();
            for (c, vec) in coeffs.iter().zip(&self.basis) {
                if *c != 0 {
                    for (s, &v) in sol.iter_mut().zip(vec) {
                        *s ^= self.field.mul(*c, v);
                    }
                }
            }
            done = true;
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < size {
                    done = false;
                    break;
                }
                *c = 0;
            }
            Some(sol)
        })
    }
}

/// Gauss-Jordan elimination of `system * v = rhs` over `field`.
pub(crate) fn solve(
    field: &Arc<GaloisField>,
    mut system: Vec<Vec<Symbol>>,
    mut rhs: Vec<Symbol>,
) -> ErasureSolution {
    let unknowns = system.first().map_or(0, Vec::len);
    let rows = system.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| system[i][c] != 0) else {
            continue;
        };
        system.swap(r, p);
        rhs.swap(r, p);
        let inv = field.inv(system[r][c]).expect("pivot is nonzero");
        for v in system[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        rhs[r] = field.mul(rhs[r], inv);
        for i in 0..rows {
            if i != r && system[i][c] != 0 {
                let factor = system[i][c];
                let (pivot_row, row) = if i < r {
                    let (a, b) = system.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = system.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (dst, &src) in row.iter_mut().zip(pivot_row) {
                    *dst ^= field.mul(factor, src);
                }
                rhs[i] ^= field.mul(factor, rhs[r]);
            }
        }
        pivots.push((r, c));
        r += 1;
    }

    if rhs[r..].iter().any(|&v| v != 0) {
        return ErasureSolution::Inconsistent;
    }

    let mut particular = vec![0; unknowns];
    for &(row, col) in &pivots {
        particular[col] = rhs[row];
    }
    if pivots.len() == unknowns {
        return ErasureSolution::Unique(particular);
    }

    let mut is_pivot = vec![false; unknowns];
    for &(_, col) in &pivots {
        is_pivot[col] = true;
    }
    // In characteristic 2, x_pivot = rhs + sum(a * x_free).
    let basis = (0..unknowns)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0; unknowns];
            v[f] = 1;
            for &(row, col) in &pivots {
                v[col] = system[row][f];
            }
            v
        })
        .collect();
    ErasureSolution::Affine(AffineSolutions {
        field: Arc::clone(field),
        particular,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ParityMatrix;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn erase(x: &[Symbol], erased: &[usize]) -> Vec<Symbol> {
        let mut v = x.to_vec();
        for &j in erased {
            v[j] = 0;
        }
        v
    }

    fn merged(x: &[Symbol], erased: &[usize], sol: &[Symbol]) -> Vec<Symbol> {
        let mut v = x.to_vec();
        for (&j, &s) in erased.iter().zip(sol) {
            v[j] = s;
        }
        v
    }

    #[test]
    fn reed_solomon_corrects_up_to_parity_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, rows, cols) in [(4u32, 4usize, 15usize), (6, 7, 63)] {
            let h = ParityMatrix::reed_solomon(m, rows, cols).unwrap();
            for _ in 0..300 {
                let x: Vec<Symbol> = (0..cols).map(|_| rng.gen_range(0..1 << m)).collect();
                let target = h.syndrome(&x).unwrap();
                let count = rng.gen_range(0..=rows);
                let erased = sample(&mut rng, cols, count).into_vec();
                let sol = h.solve_erasures(&erase(&x, &erased), &erased, &target).unwrap();
                let expected: Vec<Symbol> = erased.iter().map(|&j| x[j]).collect();
                assert_eq!(sol, ErasureSolution::Unique(expected));
            }
        }
    }

    #[test]
    fn affine_solutions_satisfy_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = ParityMatrix::random_binary(6, 40, 17).unwrap();
        let mut saw_affine = false;
        for _ in 0..50 {
            let x: Vec<Symbol> = (0..40).map(|_| rng.gen_range(0..2)).collect();
            let target = h.syndrome(&x).unwrap();
            let erased = sample(&mut rng, 40, 9).into_vec();
            match h.solve_erasures(&erase(&x, &erased), &erased, &target).unwrap() {
                ErasureSolution::Affine(space) => {
                    saw_affine = true;
                    let all: Vec<_> = space.iter().collect();
                    assert_eq!(all.len() as u128, space.count());
                    assert_eq!(space.count(), 1 << space.free_dimension());
                    let mut distinct = all.clone();
                    distinct.sort();
                    distinct.dedup();
                    assert_eq!(distinct.len(), all.len());
                    for sol in &all {
                        assert_eq!(h.syndrome(&merged(&x, &erased, sol)).unwrap(), target);
                    }
                    let truth: Vec<Symbol> = erased.iter().map(|&j| x[j]).collect();
                    assert!(all.contains(&truth));
                }
                other => panic!("9 unknowns, 6 equations: expected affine, got {other:?}"),
            }
        }
        assert!(saw_affine);
    }

    #[test]
    fn affine_over_extension_field_counts_symbols() {
        // One equation in two GF(16) unknowns: 16 solutions.
        let h = ParityMatrix::reed_solomon(4, 1, 15).unwrap();
        let x = vec![0; 15];
        match h.solve_erasures(&x, &[2, 5], &[7]).unwrap() {
            ErasureSolution::Affine(space) => {
                assert_eq!(space.free_dimension(), 1);
                assert_eq!(space.count(), 16);
                for sol in space.iter() {
                    assert_eq!(sol[0] ^ sol[1], 7);
                }
                assert_eq!(space.iter().count(), 16);
            }
            other => panic!("expected affine, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_when_column_is_absent() {
        // Random binary matrix with an all-zero erased column system can't fix a
        // nonzero residual.
        let field = Arc::new(GaloisField::new(1).unwrap());
        let sol = solve(&field, vec![vec![0], vec![0]], vec![1, 0]);
        assert_eq!(sol, ErasureSolution::Inconsistent);
    }
}
