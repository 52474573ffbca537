//! Concrete protocols for the workbench: the naive collect-everything
//! protocol, the sequential-search protocol with its lossless transcript
//! compression, the one-bit AND poll, and the direct-sum embedding
//! transformer that turns an n-coordinate protocol into a one-bit protocol.

mod basic;
mod compress;
mod direct_sum;

pub use basic::{
    and_output, and_poll_protocol, constant_protocol, disj_output, naive_protocol, poke_width,
    sequential_search_protocol,
};
pub use compress::{
    compress_search_transcript, decompress_search_transcript, search_symbol_width, CompressError,
};
pub use direct_sum::{direct_sum_protocol, EmbeddingConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("direct-sum embedding needs k >= 2, got {0}")]
    TooFewPlayers(usize),
    #[error("direct-sum base must have n >= 1")]
    EmptyBase,
    #[error("coin budget mismatch: declared {declared} coordinator outcomes, built {built}")]
    CoinBudgetMismatch { declared: u64, built: u64 },
}

/// Smallest width that distinguishes `count` values; at least 1 so payloads
/// are never empty.
pub(crate) fn index_width(count: usize) -> usize {
    if count <= 2 {
        1
    } else {
        (usize::BITS - (count - 1).leading_zeros()) as usize
    }
}

/// Width of a fixed-size field holding values `0..count`; zero when the
/// field carries no information.
pub(crate) fn field_width(count: usize) -> usize {
    if count <= 1 {
        0
    } else {
        (usize::BITS - (count - 1).leading_zeros()) as usize
    }
}
