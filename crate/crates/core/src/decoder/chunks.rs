//! Chunk-level search: candidate chunk-deletion matrices for each block
//! candidate, then iterative single-deletion recovery across the two layers.

use super::types::{BlockCandidate, Budget, ChunkCandidate, ChunkMatrix};
use crate::bits::BitSeq;
use crate::params::CodeParams;
use crate::vt::insert_decode_raw;

struct Node {
    col: usize,
    /// Deletions already assigned to each row in columns `< col`.
    used: Vec<usize>,
    matrix: ChunkMatrix,
}

/// Lists chunk-deletion matrices whose row sums equal the block pattern.
///
/// Depth-first over chunk-strings. At column `j` the `j`-th chunk of row `i`
/// is read from `y` at `start_i + j * n_c - used_i`, the chunks are
/// concatenated and the VT syndrome compared with `m2[j]`. A match admits
/// columns whose sum is not 1, a mismatch columns with sum at least 1.
/// Out-of-range windows count as a mismatch.
///
/// A single deletion in row `i` can still produce a match when the bit read
/// past its chunk was re-inserted by block fixing, since then it need not
/// differ from the deleted bit. Such columns are kept as well.
pub fn step3_chunk_tree(
    cand: &BlockCandidate,
    m2: &[usize],
    params: &CodeParams,
    budget: &mut Budget,
) -> Vec<ChunkCandidate> {
    let (n_c, n_b, l1, l2) = (params.n_c(), params.n_b(), params.l1(), params.l2());
    let y = cand.y.as_slice();
    let pattern = cand.pattern.counts();
    let modulus = n_c * l1 + 1;

    let mut block_start = Vec::with_capacity(l1);
    let mut at = 0;
    for &a in pattern {
        block_start.push(at);
        at += n_b - a;
    }
    // Restored block holding each position of y, if any.
    let mut in_restored = vec![false; y.len()];
    for (i, &r) in cand.restored.iter().enumerate() {
        if r {
            in_restored[block_start[i]..block_start[i] + n_b].fill(true);
        }
    }

    let mut out = Vec::new();
    let mut stack = vec![Node {
        col: 0,
        used: vec![0; l1],
        matrix: ChunkMatrix::zeros(l1, l2),
    }];
    let mut column = vec![0usize; l1];
    let mut caps = vec![0usize; l1];
    let mut lenient = vec![false; l1];
    while let Some(node) = stack.pop() {
        if !budget.visit() {
            break;
        }
        let j = node.col;
        if j == l2 {
            if !budget.admit(out.len()) {
                break;
            }
            out.push(ChunkCandidate {
                y: cand.y.clone(),
                matrix: node.matrix,
            });
            continue;
        }

        let mut in_range = true;
        let mut sum = 0usize;
        for i in 0..l1 {
            let start = block_start[i] + j * n_c - node.used[i];
            if start + n_c > y.len() {
                in_range = false;
                break;
            }
            for (t, &b) in y[start..start + n_c].iter().enumerate() {
                sum += (i * n_c + t + 1) * b as usize;
            }
        }
        let matches = in_range && sum % modulus == m2[j];
        if matches {
            for i in 0..l1 {
                let past = block_start[i] + (j + 1) * n_c - node.used[i] - 1;
                lenient[i] = in_restored[past];
            }
        }

        let last = j + 1 == l2;
        for i in 0..l1 {
            caps[i] = (pattern[i] - node.used[i]).min(n_c);
        }
        if last && (0..l1).any(|i| pattern[i] - node.used[i] > n_c) {
            continue;
        }

        // Enumerate columns in lexicographic order (row 0 most significant);
        // children are pushed in reverse so they pop in that order.
        let mut children = Vec::new();
        if last {
            column.copy_from_slice(&caps);
            push_if_allowed(&column, matches, &lenient, &mut children);
        } else {
            column.fill(0);
            'odometer: loop {
                push_if_allowed(&column, matches, &lenient, &mut children);
                let mut r = l1;
                loop {
                    if r == 0 {
                        break 'odometer;
                    }
                    r -= 1;
                    if column[r] < caps[r] {
                        column[r] += 1;
                        break;
                    }
                    column[r] = 0;
                }
            }
        }
        for col in children.into_iter().rev() {
            let mut matrix = node.matrix.clone();
            let mut used = node.used.clone();
            for (i, &v) in col.iter().enumerate() {
                matrix.set(i, j, v);
                used[i] += v;
            }
            stack.push(Node { col: j + 1, used, matrix });
        }
    }
    out
}

fn push_if_allowed(column: &[usize], matches: bool, lenient: &[bool], children: &mut Vec<Vec<usize>>) {
    let s: usize = column.iter().sum();
    let allowed = if matches {
        s != 1 || column.iter().zip(lenient).any(|(&a, &l)| a == 1 && l)
    } else {
        s >= 1
    };
    if allowed {
        children.push(column.to_vec());
    }
}

/// Alternately restores chunk-strings and blocks that hold a single
/// deletion until no row or column sums to 1. Columns are handled in
/// increasing order, then rows, repeating to a fixed point.
///
/// A recovery is accepted only if the run of equivalent insertion points
/// overlaps the chunk the matrix designates; otherwise the candidate is
/// discarded (`None`).
pub fn step4_iterate(
    cand: ChunkCandidate,
    m1: &[usize],
    m2: &[usize],
    params: &CodeParams,
) -> Option<ChunkCandidate> {
    let (n_c, n_b, l1, l2) = (params.n_c(), params.n_b(), params.l1(), params.l2());
    let ChunkCandidate { y, mut matrix } = cand;
    let mut y = y.into_vec();
    let mut scratch = Vec::with_capacity(n_c * l1);
    loop {
        let mut progressed = false;

        for j in 0..l2 {
            if matrix.col_sum(j) != 1 {
                continue;
            }
            let i = (0..l1).find(|&i| matrix.get(i, j) == 1).expect("column sum is 1");
            let offsets = matrix.chunk_offsets(n_c);
            scratch.clear();
            for r in 0..l1 {
                let t = r * l2 + j;
                scratch.extend_from_slice(&y[offsets[t]..offsets[t + 1]]);
            }
            let (restored, run) = insert_decode_raw(&scratch, m2[j]);
            let (lo, hi) = (i * n_c, (i + 1) * n_c - 1);
            if *run.end() < lo || *run.start() > hi {
                return None;
            }
            let t = i * l2 + j;
            y.splice(offsets[t]..offsets[t + 1], restored[lo..=hi].iter().copied());
            matrix.set(i, j, 0);
            progressed = true;
        }

        for i in 0..l1 {
            if matrix.row_sum(i) != 1 {
                continue;
            }
            let j = (0..l2).find(|&j| matrix.get(i, j) == 1).expect("row sum is 1");
            let offsets = matrix.chunk_offsets(n_c);
            let (start, end) = (offsets[i * l2], offsets[(i + 1) * l2]);
            debug_assert_eq!(end - start, n_b - 1);
            let (restored, run) = insert_decode_raw(&y[start..end], m1[i]);
            let (lo, hi) = (j * n_c, (j + 1) * n_c - 1);
            if *run.end() < lo || *run.start() > hi {
                return None;
            }
            y.splice(start..end, restored);
            matrix.set(i, j, 0);
            progressed = true;
        }

        if !progressed {
            break;
        }
    }
    Some(ChunkCandidate {
        y: BitSeq::from_vec(y).expect("binary"),
        matrix,
    })
}
