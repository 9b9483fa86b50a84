use thiserror::Error;

/// Vertex identifier. Vertices of a graph with `n` nodes are `0..n`.
pub type Node = u32;

/// Sentinel for "no vertex".
pub const NO_NODE: Node = Node::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge #{index} ({u}, {v}): vertex id out of range for n = {n}")]
    IdOutOfRange {
        index: usize,
        u: u64,
        v: u64,
        n: usize,
    },
    #[error("too many vertices: {0}")]
    TooLarge(usize),
}

/// Immutable simple undirected graph in a contiguous (CSR) adjacency layout.
///
/// Every undirected edge is stored in both endpoint lists, and every list is
/// sorted ascending. Each adjacency slot also carries the id of its edge, so
/// overlays can tombstone edges in O(1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Node>,
    edge_ids: Vec<u32>,
}

impl Graph {
    /// Builds a simple graph from an arbitrary edge list: self-loops are
    /// dropped, duplicates (in either orientation) collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        if n >= NO_NODE as usize {
            return Err(GraphError::TooLarge(n));
        }
        let mut pairs: Vec<(Node, Node)> = Vec::new();
        for (index, (u, v)) in edges.into_iter().enumerate() {
            if u >= n as u64 || v >= n as u64 {
                return Err(GraphError::IdOutOfRange { index, u, v, n });
            }
            if u != v {
                pairs.push((u as Node, v as Node));
                pairs.push((v as Node, u as Node));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_arcs(n, &pairs))
    }

    /// `arcs` must be sorted, deduplicated, loop-free and symmetric.
    pub(crate) fn from_sorted_arcs(n: usize, arcs: &[(Node, Node)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors: Vec<Node> = arcs.iter().map(|&(_, v)| v).collect();

        // Lists are sorted, so the smaller endpoints of v's list show up in the
        // same ascending order in which we visit them as `u`.
        let mut edge_ids = vec![u32::MAX; neighbors.len()];
        let mut cursor = offsets[..n].to_vec();
        let mut next_id = 0u32;
        for u in 0..n {
            for slot in offsets[u]..offsets[u + 1] {
                let v = neighbors[slot] as usize;
                if v > u {
                    let twin = cursor[v];
                    cursor[v] += 1;
                    debug_assert_eq!(neighbors[twin] as usize, u);
                    edge_ids[slot] = next_id;
                    edge_ids[twin] = next_id;
                    next_id += 1;
                }
            }
        }

        Self {
            offsets,
            neighbors,
            edge_ids,
        }
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Node> + Clone {
        0..self.len() as Node
    }

    pub fn degree(&self, u: Node) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Sorted open neighborhood `N(u)`.
    pub fn neighbors(&self, u: Node) -> &[Node] {
        let u = u as usize;
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    /// `N[u]` as an iterator; `u` comes first.
    pub fn closed_neighbors(&self, u: Node) -> impl Iterator<Item = Node> + '_ {
        std::iter::once(u).chain(self.neighbors(u).iter().copied())
    }

    /// `N[u]` materialized as a [`VertexSet`].
    pub fn closed_neighborhood(&self, u: Node) -> VertexSet {
        let mut set = VertexSet::new(self.len());
        for v in self.closed_neighbors(u) {
            set.insert(v);
        }
        set
    }

    /// Range of adjacency slots of `u`; pairs with [`Graph::slot_target`] and
    /// [`Graph::slot_edge`].
    pub fn slots(&self, u: Node) -> std::ops::Range<usize> {
        let u = u as usize;
        self.offsets[u]..self.offsets[u + 1]
    }

    pub fn slot_target(&self, slot: usize) -> Node {
        self.neighbors[slot]
    }

    pub fn slot_edge(&self, slot: usize) -> usize {
        self.edge_ids[slot] as usize
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Full-scan check of the structural invariants: sorted, loop-free,
    /// duplicate-free, symmetric lists and consistent edge ids.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.len();
        for u in self.vertices() {
            let list = self.neighbors(u);
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("list of {u} not strictly ascending"));
                }
            }
            for slot in self.slots(u) {
                let v = self.slot_target(slot);
                if v as usize >= n {
                    return Err(format!("neighbor {v} of {u} out of range"));
                }
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                match self.neighbors(v).binary_search(&u) {
                    Ok(pos) => {
                        let twin = self.offsets[v as usize] + pos;
                        if self.slot_edge(twin) != self.slot_edge(slot) {
                            return Err(format!("edge id mismatch on {{{u}, {v}}}"));
                        }
                    }
                    Err(_) => return Err(format!("asymmetric edge {u} -> {v}")),
                }
                if self.slot_edge(slot) >= self.num_edges() {
                    return Err(format!("edge id out of range on {{{u}, {v}}}"));
                }
            }
        }
        if !self.neighbors.len().is_multiple_of(2) {
            return Err("odd number of adjacency entries".into());
        }
        Ok(())
    }
}

/// Set of vertices with O(1) membership and insertion-ordered iteration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    member: Vec<bool>,
    elements: Vec<Node>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        Self {
            member: vec![false; n],
            elements: Vec::new(),
        }
    }

    pub fn from_iter_in(n: usize, it: impl IntoIterator<Item = Node>) -> Self {
        let mut s = Self::new(n);
        for u in it {
            s.insert(u);
        }
        s
    }

    /// Returns `true` if `u` was not yet present.
    pub fn insert(&mut self, u: Node) -> bool {
        let slot = &mut self.member[u as usize];
        if *slot {
            return false;
        }
        *slot = true;
        self.elements.push(u);
        true
    }

    pub fn contains(&self, u: Node) -> bool {
        self.member.get(u as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Size of the universe `0..n`.
    pub fn universe(&self) -> usize {
        self.member.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Node> + '_ {
        self.elements.iter().copied()
    }

    pub fn as_slice(&self) -> &[Node] {
        &self.elements
    }

    pub fn sorted(&self) -> Vec<Node> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }
}

impl Extend<Node> for VertexSet {
    fn extend<T: IntoIterator<Item = Node>>(&mut self, iter: T) {
        for u in iter {
            self.insert(u);
        }
    }
}
