//! Block-level search: candidate block-deletion patterns and recovery of
//! blocks that lost a single bit.

use super::types::{BlockCandidate, BlockPattern, Budget};
use crate::bits::BitSeq;
use crate::params::CodeParams;
use crate::vt::{insert_decode_raw, weighted_sum};

/// Lists the block-deletion patterns compatible with `y` and the block
/// syndromes `m1`.
///
/// Depth-first over blocks. With `d` deletions placed in earlier blocks,
/// block `i` starts at `i * n_b - d` in `y`; the next `n_b` received bits are
/// compared with the block syndrome. A match admits 0 or at least 2
/// deletions in the block (one deletion always changes the syndrome), a
/// mismatch admits at least 1. A window running past the end of `y` counts
/// as a mismatch. Patterns are emitted in lexicographic order.
pub fn step1_block_tree(y: &[u8], m1: &[usize], params: &CodeParams, budget: &mut Budget) -> Vec<BlockPattern> {
    let (n_b, l1) = (params.n_b(), params.l1());
    let Some(k) = params.n().checked_sub(y.len()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::with_capacity(l1)];
    while let Some(prefix) = stack.pop() {
        if !budget.visit() {
            break;
        }
        let i = prefix.len();
        let used: usize = prefix.iter().sum();
        if i == l1 {
            if used == k {
                if !budget.admit(out.len()) {
                    break;
                }
                out.push(BlockPattern(prefix));
            }
            continue;
        }
        let remaining = k - used;
        let start = i * n_b - used;
        let matches = start + n_b <= y.len()
            && weighted_sum(&y[start..start + n_b]) % (n_b + 1) == m1[i];
        let last = i + 1 == l1;
        let mut children: Vec<usize> = if matches {
            std::iter::once(0).chain(2..=remaining).collect()
        } else {
            (1..=remaining).collect()
        };
        // A block cannot lose more bits than it has, and the last block must
        // absorb everything left.
        children.retain(|&a| a <= n_b && (!last || a == remaining));
        for &a in children.iter().rev() {
            let mut next = prefix.clone();
            next.push(a);
            stack.push(next);
        }
    }
    out
}

/// Restores every block with exactly one deletion using its VT syndrome and
/// zeroes its pattern entry. Never discards.
pub fn step2_fix_blocks(y: &[u8], pattern: &BlockPattern, m1: &[usize], params: &CodeParams) -> BlockCandidate {
    let n_b = params.n_b();
    let mut restored = Vec::with_capacity(y.len() + pattern.total());
    let mut updated = pattern.clone();
    let mut fixed = vec![false; pattern.counts().len()];
    let mut at = 0;
    for (i, &a) in pattern.counts().iter().enumerate() {
        let len = n_b - a;
        let window = &y[at..at + len];
        if a == 1 {
            let (block, _) = insert_decode_raw(window, m1[i]);
            restored.extend_from_slice(&block);
            updated.0[i] = 0;
            fixed[i] = true;
        } else {
            restored.extend_from_slice(window);
        }
        at += len;
    }
    BlockCandidate {
        y: BitSeq::from_vec(restored).expect("binary"),
        pattern: updated,
        restored: fixed,
    }
}
