use crate::graph::{Graph, Node, VertexSet, NO_NODE};

/// Mutable overlay on a [`Graph`] used while reducing: tombstones for deleted
/// vertices and edges, coverage flags, the partial dominating set, and
/// per-vertex live degrees.
#[derive(Clone, Debug)]
pub struct ReductionState {
    alive: Vec<bool>,
    covered: Vec<bool>,
    fixed: VertexSet,
    live_degree: Vec<u32>,
    edge_deleted: Vec<bool>,
    removed: VertexSet,
    removed_edges: usize,
}

impl ReductionState {
    pub fn new(g: &Graph) -> Self {
        Self::with_covered(g, vec![false; g.len()])
    }

    pub fn with_covered(g: &Graph, covered: Vec<bool>) -> Self {
        assert_eq!(covered.len(), g.len());
        Self {
            alive: vec![true; g.len()],
            covered,
            fixed: VertexSet::new(g.len()),
            live_degree: g.vertices().map(|u| g.degree(u) as u32).collect(),
            edge_deleted: vec![false; g.num_edges()],
            removed: VertexSet::new(g.len()),
            removed_edges: 0,
        }
    }

    pub fn is_alive(&self, u: Node) -> bool {
        self.alive[u as usize]
    }

    pub fn is_covered(&self, u: Node) -> bool {
        self.covered[u as usize]
    }

    pub fn covered(&self) -> &[bool] {
        &self.covered
    }

    pub fn is_fixed(&self, u: Node) -> bool {
        self.fixed.contains(u)
    }

    /// The partial dominating set `D`.
    pub fn fixed(&self) -> &VertexSet {
        &self.fixed
    }

    /// Non-fixed vertices deleted so far.
    pub fn removed(&self) -> &VertexSet {
        &self.removed
    }

    pub fn removed_edge_count(&self) -> usize {
        self.removed_edges
    }

    pub fn live_degree(&self, u: Node) -> usize {
        self.live_degree[u as usize] as usize
    }

    pub fn is_edge_deleted(&self, edge: usize) -> bool {
        self.edge_deleted[edge]
    }

    /// Whether the adjacency slot still carries a live edge to a live vertex.
    #[inline]
    pub fn slot_live(&self, g: &Graph, slot: usize) -> bool {
        !self.edge_deleted[g.slot_edge(slot)] && self.alive[g.slot_target(slot) as usize]
    }

    /// Alive neighbors of `u` over non-deleted edges.
    pub fn live_neighbors<'a>(&'a self, g: &'a Graph, u: Node) -> impl Iterator<Item = Node> + 'a {
        g.slots(u)
            .filter(move |&s| self.slot_live(g, s))
            .map(move |s| g.slot_target(s))
    }

    /// Deletes the edge stored at `slot` of `u`; no-op if already gone.
    pub fn delete_edge_at(&mut self, g: &Graph, u: Node, slot: usize) {
        let e = g.slot_edge(slot);
        if self.edge_deleted[e] {
            return;
        }
        let v = g.slot_target(slot);
        self.edge_deleted[e] = true;
        self.removed_edges += 1;
        if self.alive[u as usize] {
            self.live_degree[u as usize] -= 1;
        }
        if self.alive[v as usize] {
            self.live_degree[v as usize] -= 1;
        }
    }

    /// Deletes `u` together with its remaining incident edges.
    pub fn delete_node(&mut self, g: &Graph, u: Node) {
        if !self.alive[u as usize] {
            return;
        }
        for slot in g.slots(u) {
            if !self.edge_deleted[g.slot_edge(slot)] {
                self.delete_edge_at(g, u, slot);
            }
        }
        self.alive[u as usize] = false;
        if !self.fixed.contains(u) {
            self.removed.insert(u);
        }
    }

    /// Adds `u` to the dominating set and covers `N[u]` (over live edges).
    pub fn fix(&mut self, g: &Graph, u: Node) {
        debug_assert!(self.alive[u as usize]);
        self.fixed.insert(u);
        self.covered[u as usize] = true;
        for slot in g.slots(u) {
            if self.slot_live(g, slot) {
                self.covered[g.slot_target(slot) as usize] = true;
            }
        }
    }

    /// Deletes all live edges incident to `u`.
    pub fn isolate(&mut self, g: &Graph, u: Node) {
        for slot in g.slots(u) {
            self.delete_edge_at(g, u, slot);
        }
    }

    /// Marks `u` covered without fixing anything.
    pub fn cover(&mut self, u: Node) {
        self.covered[u as usize] = true;
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Kills every alive, isolated, covered vertex. Fixed vertices are dropped
    /// silently; others are recorded as removed. Returns the number of
    /// non-fixed vertices dropped.
    pub fn drop_isolated_covered(&mut self, g: &Graph) -> usize {
        let mut dropped = 0;
        for u in g.vertices() {
            if self.alive[u as usize]
                && self.covered[u as usize]
                && self.live_degree[u as usize] == 0
            {
                if !self.fixed.contains(u) {
                    dropped += 1;
                }
                self.delete_node(g, u);
            }
        }
        dropped
    }

    /// Recomputes live degrees from scratch (test oracle for the incremental
    /// bookkeeping).
    pub fn recompute_live_degrees(&self, g: &Graph) -> Vec<u32> {
        g.vertices()
            .map(|u| {
                if self.alive[u as usize] {
                    self.live_neighbors(g, u).count() as u32
                } else {
                    0
                }
            })
            .collect()
    }

    #[cfg(test)]
    fn live_degrees_raw(&self) -> Vec<u32> {
        self.alive
            .iter()
            .zip(&self.live_degree)
            .map(|(&a, &d)| if a { d } else { 0 })
            .collect()
    }
}

/// Two per-vertex stamp slots. A slot holds the id of the reference vertex
/// whose pass last wrote it; stale stamps are never cleared, only compared.
#[derive(Clone, Debug)]
pub struct EpochMarks {
    slot1: Vec<Node>,
    slot2: Vec<Node>,
}

impl EpochMarks {
    pub fn new(n: usize) -> Self {
        Self {
            slot1: vec![NO_NODE; n],
            slot2: vec![NO_NODE; n],
        }
    }

    #[inline]
    pub fn mark1(&mut self, u: Node, stamp: Node) {
        self.slot1[u as usize] = stamp;
    }

    #[inline]
    pub fn mark2(&mut self, u: Node, stamp: Node) {
        self.slot2[u as usize] = stamp;
    }

    #[inline]
    pub fn has1(&self, u: Node, stamp: Node) -> bool {
        self.slot1[u as usize] == stamp
    }

    #[inline]
    pub fn has2(&self, u: Node, stamp: Node) -> bool {
        self.slot2[u as usize] == stamp
    }
}

/// Result of rebuilding the live part of a reduction state as a fresh graph.
#[derive(Clone, Debug)]
pub struct Compacted {
    pub graph: Graph,
    /// `old_id[new] = old`.
    pub old_id: Vec<Node>,
    /// `new_id[old] = new`, or [`NO_NODE`] for vertices that did not survive.
    pub new_id: Vec<Node>,
    /// Coverage flags indexed by new id.
    pub covered: Vec<bool>,
}

/// Rebuilds the contiguous layout over alive vertices and non-deleted edges.
/// Relative vertex order is preserved.
pub fn compact(g: &Graph, state: &ReductionState) -> Compacted {
    let mut new_id = vec![NO_NODE; g.len()];
    let mut old_id = Vec::new();
    for u in g.vertices() {
        if state.is_alive(u) {
            new_id[u as usize] = old_id.len() as Node;
            old_id.push(u);
        }
    }
    let mut arcs = Vec::with_capacity(2 * g.num_edges());
    for &u in &old_id {
        let nu = new_id[u as usize];
        for v in state.live_neighbors(g, u) {
            arcs.push((nu, new_id[v as usize]));
        }
    }
    // Monotone relabeling keeps every list sorted and the arcs in order.
    let graph = Graph::from_sorted_arcs(old_id.len(), &arcs);
    let covered = old_id.iter().map(|&u| state.is_covered(u)).collect();
    Compacted {
        graph,
        old_id,
        new_id,
        covered,
    }
}
