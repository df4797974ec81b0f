//! Brute-force reference decoder for small instances.

use std::collections::BTreeSet;

use crate::bits::BitSeq;
use crate::encoder::{SyncCode, SyncMessage};
use crate::error::{Error, Result};
use crate::params::CodeParams;

pub type SupersequenceSet = BTreeSet<BitSeq>;

/// Largest number of supersequences [`enumerate_supersequences`] will build.
pub const ENUMERATION_LIMIT: u128 = 1 << 22;

/// Number of distinct length-`(m + k)` supersequences of any length-`m`
/// string: `sum_{i <= k} C(m + k, i)`.
pub fn supersequence_count(m: usize, k: usize) -> u128 {
    let n = (m + k) as u128;
    let mut binom: u128 = 1;
    let mut total: u128 = 1;
    for i in 1..=k as u128 {
        binom = binom * (n + 1 - i) / i;
        total = total.saturating_add(binom);
    }
    total
}

/// All distinct strings of length `|y| + k` containing `y` as a subsequence.
///
/// Each supersequence is generated once, through its leftmost embedding of
/// `y`: an inserted bit placed before the next unmatched bit of `y` must
/// differ from it, and after `y` is exhausted the remaining bits are free.
pub fn enumerate_supersequences(y: &[u8], k: usize) -> Result<SupersequenceSet> {
    let count = supersequence_count(y.len(), k);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut out = SupersequenceSet::new();
    let mut cur = Vec::with_capacity(y.len() + k);
    extend(y, 0, k, &mut cur, &mut out);
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn extend(y: &[u8], matched: usize, insertions: usize, cur: &mut Vec<u8>, out: &mut SupersequenceSet) {
    if matched == y.len() && insertions == 0 {
        out.insert(BitSeq::from_vec(cur.clone()).expect("binary"));
        return;
    }
    if matched < y.len() {
        cur.push(y[matched]);
        extend(y, matched + 1, insertions, cur, out);
        cur.pop();
        if insertions > 0 {
            cur.push(1 - y[matched]);
            extend(y, matched, insertions - 1, cur, out);
            cur.pop();
        }
    } else {
        for bit in 0..2 {
            cur.push(bit);
            extend(y, matched, insertions - 1, cur, out);
            cur.pop();
        }
    }
}

/// Every length-`n` supersequence of `y` that satisfies all block,
/// chunk-string and parity constraints of `msg`.
pub fn brute_force_decode(y: &[u8], msg: &SyncMessage, params: &CodeParams) -> Result<SupersequenceSet> {
    let code = SyncCode::new(*params)?;
    msg.check_shape(params)?;
    let k = params.n().checked_sub(y.len()).ok_or(Error::LengthMismatch {
        expected: params.n(),
        actual: y.len(),
    })?;
    Ok(enumerate_supersequences(y, k)?
        .into_iter()
        .filter(|x| code.satisfies(x, msg))
        .collect())
}
