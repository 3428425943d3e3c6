//! Zero-sum and bounded-weight blocks in signed sequences.
//!
//! A sequence is a map `f: [n] -> {-r, s}` (usually `{-1, 1}`), stored with
//! 1-based positions. The crate provides:
//!
//! - [`thresholds`]: exact closed forms for the lengths that force a
//!   bounded-weight window or a zero-sum gap block, and the level sets
//!   `L(r, s, m)`.
//! - [`search`]: witness searches for windows, gap blocks and progressions.
//! - [`extremal`]: the families of longest sequences avoiding such blocks.
//! - [`decomp`]: bounded-weight path decompositions of layered instances.
//! - [`numtheory`]: Liouville and Legendre sequences.
//! - [`oracle`]: brute-force verifiers for all of the above.

pub mod decomp;
pub mod error;
pub mod extremal;
pub mod numtheory;
pub mod oracle;
pub mod search;
pub mod seq;
pub mod thresholds;

pub use error::{Error, Result};
pub use seq::{parse_seq, BlockKind, BlockWitness, SignedSeq};
