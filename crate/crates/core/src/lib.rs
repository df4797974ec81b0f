//! Two-layer Varshamov-Tenengolts codes for one-way synchronization from
//! deletions.
//!
//! A node holding `X` (n bits) sends a short message built from the VT
//! syndromes of blocks and chunk-strings of `X` plus a linear parity
//! syndrome. A node holding `Y`, obtained from `X` by `k` deletions,
//! reconstructs a short list of candidates guaranteed to contain `X`.
//!
//! ```
//! use mlsync_core::{BitSeq, CodeParams, DecoderLimits, SyncCode};
//!
//! let params = CodeParams::reed_solomon(4, 5, 3, 4).unwrap();
//! let code = SyncCode::new(params).unwrap();
//! let x: BitSeq = "0100 1010 0101 0000 0011 1110 0111 0111 0001 0000 0010 0100 0100 0110 1000"
//!     .parse()
//!     .unwrap();
//! let msg = code.encode(&x).unwrap();
//! assert_eq!(msg.m1, vec![10, 6, 3, 4, 11]);
//!
//! let y = x.delete_positions(&[2, 19, 33, 50]).unwrap();
//! let report = code.decode(&y, &msg, DecoderLimits::default()).unwrap();
//! assert!(report.final_list.contains(&x));
//! ```

pub mod bits;
pub mod decoder;
pub mod encoder;
pub mod error;
pub mod gf;
pub mod message;
pub mod oracle;
pub mod params;
pub mod sim;
pub mod vt;

pub use bits::BitSeq;
pub use decoder::{decode, DecodeReport, DecoderLimits};
pub use encoder::{block_of, chunk_string_of, encode, SyncCode, SyncMessage};
pub use error::{Error, ParseError, Result};
pub use message::{parse_message, serialize_message};
pub use params::{sync_rate, CodeParams, LinearCode};
pub use vt::{vt_insert_decode, vt_syndrome, Restoration, VtSyndrome};
