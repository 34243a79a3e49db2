//! The fixed verification corpus: small bipartite graphs keyed by seed.
//!
//! Every graph has at most 5 vertices per side and at most 10 edges, so all
//! vertex and edge separations can be enumerated, and no isolated vertices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bigraph::{
    complete_bipartite, gen_planted, gen_random, matching, BipartiteGraph, Side, Vertex,
};
use crate::separation::GroundSet;

pub const CORPUS_SIZE: u64 = 50;
pub const MAX_SIDE: usize = 5;
pub const MAX_EDGES: usize = 10;

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub seed: u64,
    pub family: Family,
    pub graph: BipartiteGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Fixture,
    Planted,
    DenseSmallSide,
    Random,
}

fn path(n_edges: usize) -> BipartiteGraph {
    let nx = n_edges / 2 + 1;
    let ny = n_edges.div_ceil(2);
    let pairs: Vec<(usize, usize)> = (0..n_edges).map(|e| (e.div_ceil(2), e / 2)).collect();
    let labels = |p: &str, n: usize| GroundSet::new((1..=n).map(|i| format!("{p}{i}"))).unwrap();
    BipartiteGraph::new(labels("x", nx), labels("y", ny), &pairs).expect("valid path")
}

fn fixture(seed: u64) -> Option<BipartiteGraph> {
    Some(match seed {
        0 => matching(2),
        1 => complete_bipartite(2, 5),
        2 => complete_bipartite(5, 2),
        3 => complete_bipartite(3, 3),
        4 => complete_bipartite(2, 4),
        5 => complete_bipartite(1, 5),
        6 => gen_planted(&[(2, 2), (2, 2)], 1.0, 0.0, 6),
        7 => path(6),
        8 => matching(5),
        9 => complete_bipartite(2, 2),
        _ => return None,
    })
}

fn within_bounds(g: &BipartiteGraph) -> bool {
    let no_isolated = [Side::X, Side::Y].into_iter().all(|side| {
        (0..g.side(side).len()).all(|i| g.degree(Vertex { side, index: i }) > 0)
    });
    g.x().len() <= MAX_SIDE && g.y().len() <= MAX_SIDE && g.edge_count() <= MAX_EDGES && no_isolated
}

/// The graph for `seed`; resamples deterministically until within bounds.
pub fn corpus_graph(seed: u64) -> CorpusGraph {
    if let Some(graph) = fixture(seed) {
        return CorpusGraph {
            seed,
            family: Family::Fixture,
            graph,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family = match seed % 3 {
        0 => Family::Planted,
        1 => Family::DenseSmallSide,
        _ => Family::Random,
    };
    loop {
        let sub_seed = rng.random::<u64>();
        let graph = match family {
            Family::Planted => {
                let a = (rng.random_range(1..=3), rng.random_range(1..=3));
                let b = (rng.random_range(1..=2), rng.random_range(1..=2));
                gen_planted(&[a, b], 0.9, 0.15, sub_seed)
            }
            Family::DenseSmallSide => {
                let nx = rng.random_range(1..=2);
                let ny = rng.random_range(3..=5);
                gen_random(nx, ny, 0.85, sub_seed)
            }
            _ => {
                let nx = rng.random_range(2..=MAX_SIDE);
                let ny = rng.random_range(2..=MAX_SIDE);
                gen_random(nx, ny, rng.random_range(0.25..0.6), sub_seed)
            }
        };
        if within_bounds(&graph) {
            return CorpusGraph {
                seed,
                family,
                graph,
            };
        }
    }
}

/// Seeds `0..50`.
pub fn shipped() -> Vec<CorpusGraph> {
    (0..CORPUS_SIZE).map(corpus_graph).collect()
}
