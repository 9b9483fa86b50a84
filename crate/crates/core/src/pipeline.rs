//! Linear-time computation of the suitable set `S`: every witness `u` paired
//! with its canonical reference `rho` such that `u` is a type-3 neighbor of
//! `rho`.
//!
//! Three passes, each `O(n + m)`:
//! 1. [`compute_superset`] groups vertices by canonical reference and keeps
//!    those whose open neighborhood lies in `N[rho]` (this admits some type-2
//!    witnesses).
//! 2. [`compute_proper_partition`] assigns every vertex near a candidate
//!    witness the unique reference in whose context its type matters.
//! 3. [`filter_suitable`] tests each vertex once, in the context of that
//!    reference, and drops the type-2 witnesses.

use crate::graph::{Graph, Node, NO_NODE};
use crate::state::EpochMarks;

/// `(witness, reference)` pair; `reference` is adjacent to `witness`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WitnessRelation {
    pub witness: Node,
    pub reference: Node,
}

/// List of witness relations in which every vertex is a witness at most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    relations: Vec<WitnessRelation>,
    by_witness: Vec<Node>,
}

impl RelationSet {
    pub fn new(n: usize) -> Self {
        Self {
            relations: Vec::new(),
            by_witness: vec![NO_NODE; n],
        }
    }

    /// Panics if `witness` already has a reference.
    pub fn push(&mut self, witness: Node, reference: Node) {
        let slot = &mut self.by_witness[witness as usize];
        assert_eq!(*slot, NO_NODE, "vertex {witness} is already a witness");
        *slot = reference;
        self.relations.push(WitnessRelation { witness, reference });
    }

    pub fn reference_of(&self, witness: Node) -> Option<Node> {
        match self.by_witness[witness as usize] {
            NO_NODE => None,
            r => Some(r),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = WitnessRelation> + Clone + '_ {
        self.relations.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// `ref(S)`: distinct references, ascending.
    pub fn references(&self) -> Vec<Node> {
        let mut refs: Vec<Node> = self.relations.iter().map(|r| r.reference).collect();
        refs.sort_unstable();
        refs.dedup();
        refs
    }

    /// Relations as sorted `(witness, reference)` tuples.
    pub fn pairs(&self) -> Vec<(Node, Node)> {
        let mut p: Vec<_> = self.iter().map(|r| (r.witness, r.reference)).collect();
        p.sort_unstable();
        p
    }
}

/// Partial map `f: V -> V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMapping {
    target: Vec<Node>,
}

impl PartialMapping {
    pub fn new(n: usize) -> Self {
        Self {
            target: vec![NO_NODE; n],
        }
    }

    pub fn get(&self, x: Node) -> Option<Node> {
        match self.target[x as usize] {
            NO_NODE => None,
            r => Some(r),
        }
    }

    pub fn set(&mut self, x: Node, r: Node) {
        self.target[x as usize] = r;
    }

    pub fn mapped(&self) -> impl Iterator<Item = (Node, Node)> + Clone + '_ {
        self.target
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != NO_NODE)
            .map(|(x, &r)| (x as Node, r))
    }
}

/// How coverage information from earlier reductions enters the pipeline.
#[derive(Clone, Copy, Debug, Default)]
pub struct Annotations<'a> {
    /// Covered vertices are never admitted as witnesses.
    pub covered: Option<&'a [bool]>,
    /// When set, a neighbor of `rho` only counts as type 1 if it has an
    /// *uncovered* neighbor outside `N[rho]`.
    pub covered_aware: bool,
}

impl<'a> Annotations<'a> {
    pub fn plain() -> Self {
        Self::default()
    }

    /// Covered vertices cannot witness; type-1 test still sees every vertex.
    pub fn covered(covered: &'a [bool]) -> Self {
        Self {
            covered: Some(covered),
            covered_aware: false,
        }
    }

    /// Covered vertices cannot witness and are ignored by the type-1 test.
    pub fn covered_aware(covered: &'a [bool]) -> Self {
        Self {
            covered: Some(covered),
            covered_aware: true,
        }
    }

    #[inline]
    fn is_covered(&self, u: Node) -> bool {
        self.covered.is_some_and(|c| c[u as usize])
    }

    #[inline]
    fn ignorable(&self, u: Node) -> bool {
        self.covered_aware && self.is_covered(u)
    }
}

/// Counts inner-loop steps (vertex iterations and adjacency-entry visits).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Work {
    pub visits: u64,
}

impl Work {
    #[inline]
    pub(crate) fn add(&mut self, k: usize) {
        self.visits += k as u64;
    }
}

#[inline]
fn rank(g: &Graph, v: Node) -> (usize, Node) {
    (g.degree(v), v)
}

/// `argmax` of `(degree, id)` over `N[u]`.
pub fn canonical_reference(g: &Graph, u: Node) -> Node {
    g.neighbors(u).iter().copied().fold(
        u,
        |best, v| if rank(g, v) > rank(g, best) { v } else { best },
    )
}

/// Groups `items` by key in `O(n + len)`; returns `(offsets, values)` such that
/// the values of key `k` are `values[offsets[k]..offsets[k + 1]]`, in input order.
fn bucket_by(
    n: usize,
    items: impl Iterator<Item = (Node, Node)> + Clone,
) -> (Vec<usize>, Vec<Node>) {
    let mut offsets = vec![0usize; n + 1];
    for (k, _) in items.clone() {
        offsets[k as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor = offsets.clone();
    let mut values = vec![0; offsets[n]];
    for (k, v) in items {
        values[cursor[k as usize]] = v;
        cursor[k as usize] += 1;
    }
    (offsets, values)
}

/// `S'`: all `(u, canRef(u))` with `u != canRef(u)` and `N(u) ⊆ N[canRef(u)]`.
pub fn compute_superset(g: &Graph) -> RelationSet {
    compute_superset_with(g, Annotations::plain(), &mut Work::default())
}

pub fn compute_superset_with(g: &Graph, ann: Annotations, work: &mut Work) -> RelationSet {
    let n = g.len();
    let mut can_ref = vec![NO_NODE; n];
    for u in g.vertices() {
        work.add(1 + g.degree(u));
        can_ref[u as usize] = canonical_reference(g, u);
    }

    let candidates = g
        .vertices()
        .filter(|&u| can_ref[u as usize] != u && !ann.is_covered(u))
        .map(|u| (can_ref[u as usize], u));
    let (offsets, bucket) = bucket_by(n, candidates);
    work.add(2 * n);

    let mut marks = EpochMarks::new(n);
    let mut out = RelationSet::new(n);
    for rho in g.vertices() {
        let group = &bucket[offsets[rho as usize]..offsets[rho as usize + 1]];
        if group.is_empty() {
            continue;
        }
        work.add(1 + g.degree(rho));
        for v in g.closed_neighbors(rho) {
            marks.mark1(v, rho);
        }
        for &u in group {
            work.add(1 + g.degree(u));
            if g.neighbors(u).iter().all(|&w| marks.has1(w, rho)) {
                out.push(u, rho);
            }
        }
    }
    out
}

/// Partial mapping that sends every vertex of `N[wit(S')]` to the candidate
/// reference of minimum `(degree, id)` among those proposed by its closed
/// neighbors and adjacent to it.
pub fn compute_proper_partition(g: &Graph, superset: &RelationSet) -> PartialMapping {
    compute_proper_partition_with(g, superset, &mut Work::default())
}

pub fn compute_proper_partition_with(
    g: &Graph,
    superset: &RelationSet,
    work: &mut Work,
) -> PartialMapping {
    let n = g.len();
    let mut f = PartialMapping::new(n);
    let mut visited = vec![false; n];
    // stamp[v] == x  <=>  v ∈ N(x) during x's iteration
    let mut stamp = vec![NO_NODE; n];

    for rel in superset.iter() {
        work.add(1 + g.degree(rel.witness));
        for x in g.closed_neighbors(rel.witness) {
            if std::mem::replace(&mut visited[x as usize], true) {
                continue;
            }
            work.add(2 * (1 + g.degree(x)));
            for &v in g.neighbors(x) {
                stamp[v as usize] = x;
            }
            let best = g
                .closed_neighbors(x)
                .filter_map(|y| superset.reference_of(y))
                .filter(|&r| stamp[r as usize] == x)
                .min_by_key(|&r| rank(g, r));
            if let Some(r) = best {
                f.set(x, r);
            }
        }
    }
    f
}

/// Keeps exactly the type-3 witnesses of `S'`, given a properly partitioning `f`.
pub fn filter_suitable(g: &Graph, superset: &RelationSet, f: &PartialMapping) -> RelationSet {
    filter_suitable_with(g, superset, f, Annotations::plain(), &mut Work::default())
}

pub fn filter_suitable_with(
    g: &Graph,
    superset: &RelationSet,
    f: &PartialMapping,
    ann: Annotations,
    work: &mut Work,
) -> RelationSet {
    let n = g.len();
    let (chosen_off, chosen) = bucket_by(n, f.mapped().map(|(x, r)| (r, x)));
    let (wit_off, wits) = bucket_by(n, superset.iter().map(|r| (r.reference, r.witness)));
    work.add(4 * n);

    let mut marks = EpochMarks::new(n);
    let mut out = RelationSet::new(n);
    for rho in superset.references() {
        let r = rho as usize;
        work.add(1 + g.degree(rho));
        for v in g.closed_neighbors(rho) {
            marks.mark1(v, rho);
        }
        // second slot: members of chosenBy(rho) that are not type 1 to rho
        for &x in &chosen[chosen_off[r]..chosen_off[r + 1]] {
            work.add(1 + g.degree(x));
            let inside = g
                .neighbors(x)
                .iter()
                .all(|&w| marks.has1(w, rho) || ann.ignorable(w));
            if inside {
                marks.mark2(x, rho);
            }
        }
        for &u in &wits[wit_off[r]..wit_off[r + 1]] {
            work.add(1 + g.degree(u));
            let type3 = g
                .closed_neighbors(u)
                .filter(|&v| v != rho)
                .all(|v| marks.has2(v, rho));
            if type3 {
                out.push(u, rho);
            }
        }
    }
    out
}

/// Runs all three passes.
pub fn suitable_set(g: &Graph) -> RelationSet {
    suitable_set_with(g, Annotations::plain(), &mut Work::default())
}

pub fn suitable_set_with(g: &Graph, ann: Annotations, work: &mut Work) -> RelationSet {
    let superset = compute_superset_with(g, ann, work);
    let f = compute_proper_partition_with(g, &superset, work);
    filter_suitable_with(g, &superset, &f, ann, work)
}
