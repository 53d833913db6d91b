//! Seeded inputs shared by the benchmarks.

use omtrace::{fixtures, random, Dfa};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// State counts used by the scaling benchmarks.
pub const SIZES: [usize; 4] = [8, 16, 32, 64];

/// A fixed I-diamond DFA with exactly `n` states over three pairwise
/// independent letters.
pub fn i_diamond_dfa(n: usize) -> Dfa {
    random::i_diamond_dfa_sized(&mut StdRng::seed_from_u64(n as u64), 3, n)
}

/// The curated trace-closed languages.
pub fn curated() -> Vec<(&'static str, Dfa)> {
    fixtures::curated_trace_closed()
}
