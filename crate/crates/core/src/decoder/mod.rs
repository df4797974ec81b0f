//! List decoder: reconstructs every candidate `X` from the received `Y` and
//! the synchronization message.
//!
//! The pipeline runs in six steps:
//!
//! 1. block tree: block-deletion patterns consistent with the block syndromes;
//! 2. block fixing: single-deletion blocks restored by VT decoding;
//! 3. chunk trees: chunk-deletion matrices consistent with the chunk-string
//!    syndromes;
//! 4. iterative correction of single-deletion chunk-strings and blocks;
//! 5. chunks still missing bits become erasures, filled from the parity
//!    syndrome;
//! 6. constraint check and de-duplication.
//!
//! `r1`, `r3`, `r4`, `r5`, `r6` in [`DecodeReport`] are the list sizes after
//! steps 1, 3, 4, 5 and 6.

mod blocks;
mod chunks;
mod finish;
mod types;

pub use blocks::{step1_block_tree, step2_fix_blocks};
pub use chunks::{step3_chunk_tree, step4_iterate};
pub use finish::{step5_erase_and_solve, step6_filter};
pub use types::{BlockCandidate, BlockPattern, Budget, ChunkCandidate, ChunkMatrix, DecodeReport, DecoderLimits};

use crate::encoder::{SyncCode, SyncMessage};
use crate::error::{Error, Result};
use crate::params::CodeParams;

impl SyncCode {
    /// Runs the full decoder. Caps in `limits` produce a truncated report,
    /// never an error.
    pub fn decode(&self, y: &[u8], msg: &SyncMessage, limits: DecoderLimits) -> Result<DecodeReport> {
        let params = self.params();
        msg.check_shape(params)?;
        if y.len() > params.n() {
            return Err(Error::InvalidParams(format!(
                "received {} bits but the code length is {}",
                y.len(),
                params.n()
            )));
        }
        if y.iter().any(|&b| b > 1) {
            return Err(Error::InvalidBits("received sequence contains a non-bit".into()));
        }
        let k = params.n() - y.len();
        let mut budget = Budget::new(limits);

        let patterns = step1_block_tree(y, &msg.m1, params, &mut budget);
        let r1 = patterns.len();

        let mut pairs = Vec::new();
        'patterns: for pattern in &patterns {
            let fixed = step2_fix_blocks(y, pattern, &msg.m1, params);
            for cand in step3_chunk_tree(&fixed, &msg.m2, params, &mut budget) {
                if !budget.admit(pairs.len()) {
                    break 'patterns;
                }
                pairs.push(cand);
            }
            if budget.truncated() {
                break;
            }
        }
        let r3 = pairs.len();

        let survivors: Vec<_> = pairs
            .into_iter()
            .filter_map(|c| step4_iterate(c, &msg.m1, &msg.m2, params))
            .collect();
        let r4 = survivors.len();

        let mut filled = Vec::new();
        'survivors: for cand in &survivors {
            for x in step5_erase_and_solve(cand, &msg.m3, self, &mut budget) {
                if !budget.admit(filled.len()) {
                    break 'survivors;
                }
                filled.push(x);
            }
        }
        let r5 = filled.len();

        let final_list = step6_filter(filled, y, msg, self);
        Ok(DecodeReport {
            r6: final_list.len(),
            final_list,
            k,
            r1,
            r3,
            r4,
            r5,
            truncated: budget.truncated(),
            tree_nodes: budget.nodes_used(),
            limits,
        })
    }
}

/// One-shot decode; builds the parity matrix on every call.
pub fn decode(y: &[u8], msg: &SyncMessage, params: &CodeParams, limits: DecoderLimits) -> Result<DecodeReport> {
    SyncCode::new(*params)?.decode(y, msg, limits)
}
