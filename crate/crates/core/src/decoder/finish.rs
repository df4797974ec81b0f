//! Erasure filling with the linear code, then final constraint filtering.

use super::types::{Budget, ChunkCandidate};
use crate::bits::BitSeq;
use crate::encoder::{parity_vector, SyncCode, SyncMessage};
use crate::gf::{ErasureSolution, Symbol};
use crate::params::LinearCode;

/// Replaces every chunk that still has deletions by `n_c` erasures and
/// fills them from the parity syndrome. Returns every length-`n` sequence
/// consistent with the parity equations (none when they are unsolvable).
pub fn step5_erase_and_solve(
    cand: &ChunkCandidate,
    m3: &[Symbol],
    code: &SyncCode,
    budget: &mut Budget,
) -> Vec<BitSeq> {
    let params = code.params();
    let (n_c, l2) = (params.n_c(), params.l2());
    let matrix = &cand.matrix;
    let offsets = matrix.chunk_offsets(n_c);

    let mut x = Vec::with_capacity(params.n());
    let mut erased_chunks = Vec::new();
    for t in 0..params.chunk_count() {
        let (i, j) = (t / l2, t % l2);
        if matrix.get(i, j) == 0 {
            x.extend_from_slice(&cand.y[offsets[t]..offsets[t + 1]]);
        } else {
            erased_chunks.push(t);
            x.extend(std::iter::repeat_n(0, n_c));
        }
    }

    let values = parity_vector(&x, params);
    let erased: Vec<usize> = match params.code() {
        LinearCode::ReedSolomon { .. } => erased_chunks.clone(),
        LinearCode::RandomBinary { .. } => erased_chunks
            .iter()
            .flat_map(|&t| t * n_c..(t + 1) * n_c)
            .collect(),
    };
    let solution = code
        .matrix()
        .solve_erasures(&values, &erased, m3)
        .expect("erasure system is well-formed");

    let fill = |assignment: &[Symbol]| -> BitSeq {
        let mut out = x.clone();
        match params.code() {
            LinearCode::ReedSolomon { .. } => {
                for (&t, &sym) in erased_chunks.iter().zip(assignment) {
                    for b in 0..n_c {
                        out[t * n_c + b] = ((sym >> (n_c - 1 - b)) & 1) as u8;
                    }
                }
            }
            LinearCode::RandomBinary { .. } => {
                for (&pos, &bit) in erased.iter().zip(assignment) {
                    out[pos] = bit as u8;
                }
            }
        }
        BitSeq::from_vec(out).expect("binary")
    };

    match solution {
        ErasureSolution::Unique(assignment) => vec![fill(&assignment)],
        ErasureSolution::Inconsistent => Vec::new(),
        ErasureSolution::Affine(space) => {
            let cap = budget.limits().max_affine_enumeration;
            if space.count() > cap as u128 {
                budget.mark_truncated();
            }
            space.iter().take(cap).map(|a| fill(&a)).collect()
        }
    }
}

/// Keeps the sequences that contain `y` as a subsequence and satisfy every
/// block, chunk-string and parity constraint, sorted and without duplicates.
///
/// The subsequence test matters because erased chunks are refilled from the
/// parity alone, which can discard surviving bits of `y`.
pub fn step6_filter(candidates: Vec<BitSeq>, y: &[u8], msg: &SyncMessage, code: &SyncCode) -> Vec<BitSeq> {
    let mut kept: Vec<BitSeq> = candidates
        .into_iter()
        .filter(|x| x.has_subsequence(y) && code.satisfies(x, msg))
        .collect();
    kept.sort_unstable();
    kept.dedup();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::chunks::tests::{a2, a3, example_setup};
    use crate::decoder::{step4_iterate, ChunkMatrix, DecoderLimits};
    use crate::params::CodeParams;

    fn budget() -> Budget {
        Budget::new(DecoderLimits::default())
    }

    #[test]
    fn one_erased_chunk_is_unique() {
        let (params, x, msg) = example_setup();
        let code = SyncCode::new(params).unwrap();
        let (dels, a) = a2();
        let y = x.delete_positions(&dels).unwrap();
        let cand = step4_iterate(ChunkCandidate { y, matrix: a }, &msg.m1, &msg.m2, &params).unwrap();
        let out = step5_erase_and_solve(&cand, &msg.m3, &code, &mut budget());
        assert_eq!(out, vec![x.clone()]);
        assert_eq!(code.encode(&out[0]).unwrap().m3, msg.m3);
    }

    #[test]
    fn four_erased_chunks_at_capacity() {
        let (params, x, msg) = example_setup();
        let code = SyncCode::new(params).unwrap();
        let (dels, a) = a3();
        let y = x.delete_positions(&dels).unwrap();
        let out = step5_erase_and_solve(&ChunkCandidate { y, matrix: a }, &msg.m3, &code, &mut budget());
        assert_eq!(out, vec![x]);
    }

    #[test]
    fn parity_mismatch_without_erasures_gives_nothing() {
        let (params, x, msg) = example_setup();
        let code = SyncCode::new(params).unwrap();
        let mut wrong = x.into_vec();
        wrong[0] ^= 1;
        let cand = ChunkCandidate {
            y: BitSeq::from_vec(wrong).unwrap(),
            matrix: ChunkMatrix::zeros(5, 3),
        };
        assert!(step5_erase_and_solve(&cand, &msg.m3, &code, &mut budget()).is_empty());
    }

    #[test]
    fn binary_code_enumerates_free_bits() {
        // One parity check cannot pin down a fully erased 2-bit chunk.
        let params = CodeParams::random_binary(2, 2, 2, 1, 9).unwrap();
        let code = SyncCode::new(params).unwrap();
        let x: BitSeq = "10 01 11 00".parse().unwrap();
        let msg = code.encode(&x).unwrap();
        let y = x.delete_positions(&[2, 3]).unwrap();
        let matrix = ChunkMatrix::from_rows(&[vec![0, 2], vec![0, 0]]);
        let out = step5_erase_and_solve(&ChunkCandidate { y, matrix }, &msg.m3, &code, &mut budget());
        assert!(out.contains(&x));
        assert!(out.len() >= 2);

        let mut tight = Budget::new(DecoderLimits {
            max_affine_enumeration: 1,
            ..DecoderLimits::default()
        });
        let y = x.delete_positions(&[2, 3]).unwrap();
        let matrix = ChunkMatrix::from_rows(&[vec![0, 2], vec![0, 0]]);
        let capped = step5_erase_and_solve(&ChunkCandidate { y, matrix }, &msg.m3, &code, &mut tight);
        assert_eq!(capped.len(), 1);
        assert!(tight.truncated());
    }

    #[test]
    fn filter_dedups_and_drops_non_supersequences() {
        let (params, x, msg) = example_setup();
        let code = SyncCode::new(params).unwrap();
        let y = x.delete_positions(&[0, 1, 2]).unwrap();
        let mut other = x.clone().into_vec();
        other[59] ^= 1;
        let other = BitSeq::from_vec(other).unwrap();
        let kept = step6_filter(vec![x.clone(), other, x.clone()], &y, &msg, &code);
        assert_eq!(kept, vec![x.clone()]);

        // Satisfies every constraint but does not contain y.
        let unrelated = BitSeq::zeros(57);
        assert!(step6_filter(vec![x], &unrelated, &msg, &code).is_empty());
    }
}
