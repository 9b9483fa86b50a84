//! Greedy dominating set with a seeded tie-breaker.

use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{Graph, Node, VertexSet};

pub const DEFAULT_RUNS: usize = 10;

/// Per-vertex priorities forming a permutation of `0..n`; higher wins ties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieBreaker {
    priority: Vec<u32>,
}

impl TieBreaker {
    pub fn from_seed(n: usize, seed: u64) -> Self {
        let mut priority: Vec<u32> = (0..n as u32).collect();
        priority.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self { priority }
    }

    /// Uses `priority` as given. Panics unless it is a permutation of `0..n`.
    pub fn from_priorities(priority: Vec<u32>) -> Self {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            assert!(
                (p as usize) < seen.len() && !std::mem::replace(&mut seen[p as usize], true),
                "priorities must be a permutation"
            );
        }
        Self { priority }
    }

    pub fn priority(&self, u: Node) -> u32 {
        self.priority[u as usize]
    }

    pub fn len(&self) -> usize {
        self.priority.len()
    }

    pub fn is_empty(&self) -> bool {
        self.priority.is_empty()
    }
}

/// `count` distinct-ish run seeds drawn from a master seed.
pub fn derive_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.gen()).collect()
}

/// Repeatedly picks the vertex whose closed neighborhood holds the most
/// uncovered vertices (ties by priority) until every vertex is covered.
/// `covered` may be shorter than `n` only if empty, meaning nothing covered.
pub fn greedy(g: &Graph, covered: &[bool], tb: &TieBreaker) -> VertexSet {
    let n = g.len();
    assert_eq!(tb.len(), n, "tie-breaker size mismatch");
    let mut covered = if covered.is_empty() {
        vec![false; n]
    } else {
        assert_eq!(covered.len(), n);
        covered.to_vec()
    };
    let gain = |u: Node, covered: &[bool]| {
        g.closed_neighbors(u)
            .filter(|&v| !covered[v as usize])
            .count()
    };

    let mut heap: BinaryHeap<(usize, u32, Node)> = g
        .vertices()
        .map(|u| (gain(u, &covered), tb.priority(u), u))
        .filter(|&(c, _, _)| c > 0)
        .collect();
    let mut out = VertexSet::new(n);
    while let Some((stale, prio, u)) = heap.pop() {
        let fresh = gain(u, &covered);
        if fresh == 0 {
            continue;
        }
        if fresh < stale {
            heap.push((fresh, prio, u));
            continue;
        }
        out.insert(u);
        for v in g.closed_neighbors(u) {
            covered[v as usize] = true;
        }
    }
    out
}

/// Smallest [`greedy`] result over the given seeds; earlier seeds win ties.
pub fn greedy_best_of(g: &Graph, covered: &[bool], seeds: &[u64]) -> VertexSet {
    assert!(!seeds.is_empty(), "greedy_best_of needs at least one seed");
    seeds
        .par_iter()
        .map(|&s| greedy(g, covered, &TieBreaker::from_seed(g.len(), s)))
        .collect::<Vec<_>>()
        .into_iter()
        .min_by_key(|d| d.len())
        .unwrap()
}
