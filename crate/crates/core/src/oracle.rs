//! Slow reference implementations written straight from the definitions.
//! Used by tests and the acceptance suite only.

use thiserror::Error;

use crate::graph::{Graph, Node, VertexSet};
use crate::pipeline::{canonical_reference, RelationSet};

/// Largest instance [`exact_annotated_gamma`] accepts.
pub const EXACT_MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {0} vertices; exact solver is limited to {EXACT_MAX_VERTICES}")]
    TooLarge(usize),
}

/// Split of `N(rho)` into type-1/2/3 neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    pub n1: VertexSet,
    pub n2: VertexSet,
    pub n3: VertexSet,
}

/// A graph plus coverage flags. Covered vertices need not be dominated.
#[derive(Clone, Debug)]
pub struct AnnotatedInstance {
    pub graph: Graph,
    pub covered: Vec<bool>,
}

impl AnnotatedInstance {
    pub fn plain(graph: Graph) -> Self {
        let covered = vec![false; graph.len()];
        Self { graph, covered }
    }
}

fn in_closed(g: &Graph, rho: Node, w: Node) -> bool {
    w == rho || g.has_edge(rho, w)
}

/// Neighbor types of `rho`. With `covered = Some(..)`, a neighbor is type 1
/// only if it has an *uncovered* neighbor outside `N[rho]`.
pub fn classify_types(g: &Graph, covered: Option<&[bool]>, rho: Node) -> TypePartition {
    let n = g.len();
    let is_cov = |w: Node| covered.is_some_and(|c| c[w as usize]);
    let mut part = TypePartition {
        n1: VertexSet::new(n),
        n2: VertexSet::new(n),
        n3: VertexSet::new(n),
    };
    for &u in g.neighbors(rho) {
        let outside = g
            .neighbors(u)
            .iter()
            .any(|&w| !in_closed(g, rho, w) && !is_cov(w));
        if outside {
            part.n1.insert(u);
        }
    }
    for &u in g.neighbors(rho) {
        if part.n1.contains(u) {
            continue;
        }
        if g.neighbors(u).iter().any(|&w| part.n1.contains(w)) {
            part.n2.insert(u);
        } else {
            part.n3.insert(u);
        }
    }
    part
}

/// Candidate set `C`: every `(u, rho)` with `u` a type-3 neighbor of `rho`.
pub fn candidate_set(g: &Graph) -> Vec<(Node, Node)> {
    let mut c = Vec::new();
    for rho in g.vertices() {
        for u in classify_types(g, None, rho).n3.iter() {
            c.push((u, rho));
        }
    }
    c.sort_unstable();
    c
}

/// `S` by definition: candidates whose reference is the witness's canonical one.
pub fn suitable_set_direct(g: &Graph) -> RelationSet {
    suitable_set_direct_annotated(g, None, false)
}

/// `S` on an annotated instance. Covered vertices never witness; the witness
/// must satisfy `N(u) ⊆ N[rho]`; with `covered_aware` the type-1 test ignores
/// covered vertices outside `N[rho]`.
pub fn suitable_set_direct_annotated(
    g: &Graph,
    covered: Option<&[bool]>,
    covered_aware: bool,
) -> RelationSet {
    let is_cov = |w: Node| covered.is_some_and(|c| c[w as usize]);
    let mut s = RelationSet::new(g.len());
    let mut pairs = Vec::new();
    for rho in g.vertices() {
        let types = classify_types(g, if covered_aware { covered } else { None }, rho);
        for u in types.n3.iter() {
            let strict = g.neighbors(u).iter().all(|&w| in_closed(g, rho, w));
            if !is_cov(u) && strict && canonical_reference(g, u) == rho {
                pairs.push((u, rho));
            }
        }
    }
    pairs.sort_unstable();
    for (u, rho) in pairs {
        s.push(u, rho);
    }
    s
}

/// Outcome of the exhaustive original rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginalRuleOutcome {
    /// Selected references `M`, in selection order.
    pub fixed: VertexSet,
    pub removed: VertexSet,
}

/// Repeatedly applies the rule to the lowest-id non-fixed reference with a
/// type-3 neighbor: fix it and delete its type-2/3 neighbors. A fixed vertex
/// keeps its remaining edges and gets a private pendant, which forces it into
/// the solution and makes it type 1 for every other reference. Stops when no
/// reference qualifies.
pub fn exhaustive_original_rule1(g: &Graph) -> OriginalRuleOutcome {
    let n = g.len();
    let mut edges: Vec<(u64, u64)> = g.edges().map(|(u, v)| (u as u64, v as u64)).collect();
    let mut alive = vec![true; n];
    let mut out = OriginalRuleOutcome {
        fixed: VertexSet::new(n),
        removed: VertexSet::new(n),
    };
    loop {
        // pendant of a fixed rho is vertex n + rho
        let cur = Graph::from_edges(2 * n, edges.iter().copied()).unwrap();
        let hit = (0..n as Node)
            .filter(|&r| alive[r as usize] && !out.fixed.contains(r))
            .find_map(|rho| {
                let t = classify_types(&cur, None, rho);
                (!t.n3.is_empty()).then_some((rho, t))
            });
        let Some((rho, types)) = hit else {
            return out;
        };
        out.fixed.insert(rho);
        for u in types.n2.iter().chain(types.n3.iter()) {
            alive[u as usize] = false;
            out.removed.insert(u);
        }
        edges.retain(|&(a, b)| alive[a as usize % n] && alive[b as usize % n]);
        edges.push((rho as u64, (n + rho as usize) as u64));
    }
}

/// Exact minimum set that dominates every uncovered vertex.
pub fn exact_annotated_gamma(inst: &AnnotatedInstance) -> Result<(usize, Vec<Node>), OracleError> {
    let g = &inst.graph;
    let n = g.len();
    if n > EXACT_MAX_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    let closed: Vec<u64> = g
        .vertices()
        .map(|u| g.closed_neighbors(u).fold(0u64, |m, v| m | (1u64 << v)))
        .collect();
    let need = g
        .vertices()
        .filter(|&u| !inst.covered[u as usize])
        .fold(0u64, |m, v| m | (1u64 << v));

    let mut best: Vec<Node> = (0..n as Node).filter(|&u| need >> u & 1 == 1).collect();
    let mut chosen = Vec::new();
    branch(&closed, need, &mut chosen, &mut best);
    best.sort_unstable();
    Ok((best.len(), best))
}

fn branch(closed: &[u64], open: u64, chosen: &mut Vec<Node>, best: &mut Vec<Node>) {
    if open == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let max_gain = closed
        .iter()
        .map(|&c| (c & open).count_ones())
        .max()
        .unwrap_or(0);
    let lower = open.count_ones().div_ceil(max_gain);
    if chosen.len() + lower as usize >= best.len() {
        return;
    }
    // branch on the open vertex with the fewest dominators
    let mut pivot = 0;
    let mut fewest = u32::MAX;
    let mut rest = open;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let c = closed[v as usize].count_ones();
        if c < fewest {
            fewest = c;
            pivot = v;
        }
    }
    let mut options: Vec<(u32, Node)> = Vec::new();
    let mut dominators = closed[pivot as usize];
    while dominators != 0 {
        let w = dominators.trailing_zeros();
        dominators &= dominators - 1;
        options.push(((closed[w as usize] & open).count_ones(), w));
    }
    options.sort_unstable_by(|a, b| b.cmp(a));
    for (_, w) in options {
        chosen.push(w);
        branch(closed, open & !closed[w as usize], chosen, best);
        chosen.pop();
    }
}

/// Exact `gamma` of a plain graph.
pub fn exact_gamma(g: &Graph) -> usize {
    exact_annotated_gamma(&AnnotatedInstance::plain(g.clone()))
        .expect("graph too large for the exact oracle")
        .0
}
