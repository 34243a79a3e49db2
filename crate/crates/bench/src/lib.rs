//! Fixtures shared by the benchmarks.

use dualsep::bigraph::{gen_planted, BipartiteGraph};

/// Two dense blocks joined by sparse cross edges.
pub fn two_blocks(seed: u64) -> BipartiteGraph {
    gen_planted(&[(3, 3), (3, 3)], 0.9, 0.1, seed)
}
