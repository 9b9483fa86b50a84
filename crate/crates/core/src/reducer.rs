//! Applying the rule: fix every suitable reference, then delete what the
//! chosen variant proves redundant.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{Graph, Node, VertexSet, NO_NODE};
use crate::pipeline::{suitable_set_with, Annotations, Work};
use crate::state::{compact, ReductionState};

pub const DEFAULT_MAX_ROUNDS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// One pass over all vertices in id order, classifying each neighborhood
    /// by direct scan.
    Naive,
    /// Delete marked non-references whose whole neighborhood is marked.
    Linear,
    /// Delete marked non-references with at most one unmarked neighbor.
    Plus,
    /// `Plus`, then delete every edge between two marked non-references.
    Extra,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Naive,
        Variant::Linear,
        Variant::Plus,
        Variant::Extra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Naive => "naive",
            Variant::Linear => "linear",
            Variant::Plus => "plus",
            Variant::Extra => "extra",
        }
    }

    fn unmarked_budget(self) -> usize {
        match self {
            Variant::Naive | Variant::Linear => 0,
            Variant::Plus | Variant::Extra => 1,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = ReduceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ReduceError::UnknownVariant(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("reference {0} is not alive")]
    DeadReference(Node),
    #[error("max_rounds must be at least 1")]
    ZeroRounds,
    #[error("iterated application needs the plus or extra variant, got {0}")]
    NotIterable(Variant),
    #[error("unknown rule variant `{0}`")]
    UnknownVariant(String),
    #[error("deadline exceeded")]
    Timeout,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Timings {
    /// Setup of the reduction state.
    pub build: Duration,
    /// Rule application, including compaction between rounds.
    pub reduce: Duration,
}

/// Accounting of a reduction run. Vertex ids refer to the graph the run
/// started from.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub fixed: VertexSet,
    pub removed: VertexSet,
    pub removed_edges: usize,
    pub rounds: usize,
    pub timings: Timings,
    pub work: Work,
}

impl ReductionReport {
    fn empty(n: usize) -> Self {
        Self {
            fixed: VertexSet::new(n),
            removed: VertexSet::new(n),
            removed_edges: 0,
            rounds: 1,
            timings: Timings::default(),
            work: Work::default(),
        }
    }

    pub fn changed(&self) -> bool {
        !self.fixed.is_empty() || !self.removed.is_empty() || self.removed_edges > 0
    }
}

/// Fixes every vertex of `refs` and deletes what `variant` allows.
///
/// Marked means "in `N[rho]` for some `rho` in `refs`". Linear deletes marked
/// non-references without unmarked neighbors, Plus tolerates one unmarked
/// neighbor, Extra additionally drops edges between marked non-references.
/// Afterwards all edges at fixed vertices are deleted.
pub fn apply_reduction(
    g: &Graph,
    state: &mut ReductionState,
    refs: &[Node],
    variant: Variant,
    work: &mut Work,
) -> Result<ReductionReport, ReduceError> {
    let n = g.len();
    if let Some(&dead) = refs.iter().find(|&&r| !state.is_alive(r)) {
        return Err(ReduceError::DeadReference(dead));
    }
    let edges_before = state.removed_edge_count();
    let mut report = ReductionReport::empty(n);
    let mut is_ref = vec![false; n];
    let mut marked = vec![false; n];

    for &rho in refs {
        is_ref[rho as usize] = true;
        marked[rho as usize] = true;
        work.add(1 + g.degree(rho));
        for v in state.live_neighbors(g, rho) {
            marked[v as usize] = true;
        }
        state.fix(g, rho);
        report.fixed.insert(rho);
    }

    let budget = variant.unmarked_budget();
    let mut checked = vec![false; n];
    let mut deletable = Vec::new();
    for &rho in refs {
        work.add(1 + g.degree(rho));
        for u in state.live_neighbors(g, rho) {
            if is_ref[u as usize] || std::mem::replace(&mut checked[u as usize], true) {
                continue;
            }
            work.add(1 + g.degree(u));
            let unmarked = state
                .live_neighbors(g, u)
                .filter(|&w| !marked[w as usize])
                .take(budget + 1)
                .count();
            if unmarked <= budget {
                deletable.push(u);
            }
        }
    }
    for &u in &deletable {
        state.delete_node(g, u);
        report.removed.insert(u);
    }

    if variant == Variant::Extra {
        for &rho in refs {
            work.add(1 + g.degree(rho));
            for x in state.live_neighbors(g, rho).collect::<Vec<_>>() {
                if is_ref[x as usize] {
                    continue;
                }
                work.add(1 + g.degree(x));
                for slot in g.slots(x) {
                    let y = g.slot_target(slot);
                    if marked[y as usize] && !is_ref[y as usize] && state.slot_live(g, slot) {
                        state.delete_edge_at(g, x, slot);
                    }
                }
            }
        }
    }

    for &rho in refs {
        work.add(1 + g.degree(rho));
        state.isolate(g, rho);
    }
    report.removed_edges = state.removed_edge_count() - edges_before;
    report.work = *work;
    Ok(report)
}

/// One application of `variant` to the (compacted) graph `g`. For the
/// linear-time variants this runs the suitable-set pipeline and reduces with
/// `R = ref(S)`; covered vertices never serve as witnesses.
pub fn reduce_once(
    g: &Graph,
    state: &mut ReductionState,
    variant: Variant,
) -> Result<ReductionReport, ReduceError> {
    reduce_once_with(g, state, variant, false, None, &mut Work::default())
}

pub fn reduce_once_with(
    g: &Graph,
    state: &mut ReductionState,
    variant: Variant,
    covered_aware: bool,
    deadline: Option<Instant>,
    work: &mut Work,
) -> Result<ReductionReport, ReduceError> {
    if variant == Variant::Naive {
        return naive_reduce_with(g, state, deadline);
    }
    let covered = state.covered().to_vec();
    let ann = if covered_aware {
        Annotations::covered_aware(&covered)
    } else {
        Annotations::covered(&covered)
    };
    let s = suitable_set_with(g, ann, work);
    apply_reduction(g, state, &s.references(), variant, work)
}

/// The per-vertex baseline: visit vertices in id order and, whenever a vertex
/// has an uncovered type-3 neighbor in the current graph, fix it and delete all
/// its non-type-1 neighbors right away.
///
/// During the pass a fixed vertex keeps its edges and counts as type 1 for
/// every other reference, as if it carried a private pendant. Its edges are
/// dropped once the pass is over.
pub fn naive_reduce(g: &Graph, state: &mut ReductionState) -> Result<ReductionReport, ReduceError> {
    naive_reduce_with(g, state, None)
}

pub fn naive_reduce_with(
    g: &Graph,
    state: &mut ReductionState,
    deadline: Option<Instant>,
) -> Result<ReductionReport, ReduceError> {
    let n = g.len();
    let edges_before = state.removed_edge_count();
    let mut report = ReductionReport::empty(n);
    // in_closed[v] == u  <=>  v ∈ N[u];  type_one[v] == u  <=>  v ∈ N1(u)
    let mut in_closed = vec![NO_NODE; n];
    let mut type_one = vec![NO_NODE; n];
    let mut nbrs = Vec::new();
    let covered_before = state.covered().to_vec();

    for u in g.vertices() {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(ReduceError::Timeout);
        }
        if !state.is_alive(u) || state.is_fixed(u) || state.live_degree(u) == 0 {
            continue;
        }
        nbrs.clear();
        nbrs.extend(state.live_neighbors(g, u));
        in_closed[u as usize] = u;
        for &w in &nbrs {
            in_closed[w as usize] = u;
        }
        for &w in &nbrs {
            if state.is_fixed(w)
                || state
                    .live_neighbors(g, w)
                    .any(|x| in_closed[x as usize] != u)
            {
                type_one[w as usize] = u;
            }
        }
        let has_witness = nbrs.iter().any(|&w| {
            type_one[w as usize] != u
                && !covered_before[w as usize]
                && !state
                    .live_neighbors(g, w)
                    .any(|x| type_one[x as usize] == u)
        });
        if !has_witness {
            continue;
        }
        state.fix(g, u);
        report.fixed.insert(u);
        for &w in &nbrs {
            if type_one[w as usize] != u {
                state.delete_node(g, w);
                report.removed.insert(w);
            }
        }
    }
    for &u in report.fixed.as_slice() {
        state.isolate(g, u);
    }
    report.removed_edges = state.removed_edge_count() - edges_before;
    Ok(report)
}

/// Options for the [`reduce`] driver.
#[derive(Clone, Debug)]
pub struct ReduceOptions {
    pub variant: Variant,
    /// Repeat rounds (with covered-aware classification) until nothing changes.
    pub iterate: bool,
    pub max_rounds: usize,
    /// Fix isolated uncovered vertices at the end of every round.
    pub fix_isolated: bool,
    pub deadline: Option<Instant>,
}

impl ReduceOptions {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            iterate: false,
            max_rounds: DEFAULT_MAX_ROUNDS,
            fix_isolated: false,
            deadline: None,
        }
    }

    pub fn iterated(variant: Variant) -> Self {
        Self {
            iterate: true,
            ..Self::new(variant)
        }
    }
}

/// Residual annotated instance plus accounting, all relative to the input.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: Graph,
    /// Coverage flags of residual vertices.
    pub covered: Vec<bool>,
    /// `original_id[residual vertex] = input vertex`.
    pub original_id: Vec<Node>,
    pub report: ReductionReport,
}

impl Reduction {
    /// Lifts a set of residual vertex ids to input ids.
    pub fn lift(&self, residual_ids: impl IntoIterator<Item = Node>) -> Vec<Node> {
        residual_ids
            .into_iter()
            .map(|v| self.original_id[v as usize])
            .collect()
    }
}

/// Alternates rule application and compaction. Without `iterate` this is a
/// single round. Isolated covered vertices are dropped at every compaction;
/// fixed vertices never appear in the residual.
pub fn reduce(g: &Graph, opts: &ReduceOptions) -> Result<Reduction, ReduceError> {
    reduce_annotated(g, vec![false; g.len()], opts)
}

pub fn reduce_annotated(
    g: &Graph,
    covered: Vec<bool>,
    opts: &ReduceOptions,
) -> Result<Reduction, ReduceError> {
    if opts.max_rounds == 0 {
        return Err(ReduceError::ZeroRounds);
    }
    if opts.iterate && matches!(opts.variant, Variant::Naive | Variant::Linear) {
        return Err(ReduceError::NotIterable(opts.variant));
    }
    let n = g.len();
    let mut total = ReductionReport::empty(n);
    total.rounds = 0;
    let mut work = Work::default();

    let mut owned: Option<Graph> = None;
    let mut covered = covered;
    let mut original_id: Vec<Node> = (0..n as Node).collect();

    loop {
        let cur = owned.as_ref().unwrap_or(g);
        let start = Instant::now();
        let mut state = ReductionState::with_covered(cur, std::mem::take(&mut covered));
        let built = Instant::now();
        total.timings.build += built - start;

        let aware = opts.iterate && total.rounds > 0;
        let round = reduce_once_with(
            cur,
            &mut state,
            opts.variant,
            aware,
            opts.deadline,
            &mut work,
        )?;
        let mut changed = round.changed();
        if opts.fix_isolated {
            for u in cur.vertices() {
                if state.is_alive(u) && !state.is_covered(u) && state.live_degree(u) == 0 {
                    state.fix(cur, u);
                    changed = true;
                }
            }
        }
        state.drop_isolated_covered(cur);
        total.rounds += 1;
        total
            .fixed
            .extend(state.fixed().iter().map(|u| original_id[u as usize]));
        total
            .removed
            .extend(state.removed().iter().map(|u| original_id[u as usize]));
        total.removed_edges += state.removed_edge_count();

        let c = compact(cur, &state);
        original_id = c.old_id.iter().map(|&u| original_id[u as usize]).collect();
        covered = c.covered;
        owned = Some(c.graph);
        total.timings.reduce += built.elapsed();

        let done = !opts.iterate || !changed || total.rounds >= opts.max_rounds;
        if done {
            break;
        }
        if opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(ReduceError::Timeout);
        }
    }
    total.work = work;
    Ok(Reduction {
        residual: owned.expect("at least one round"),
        covered,
        original_id,
        report: total,
    })
}

/// Iterated application of `variant` (Plus or Extra) for at most `max_rounds`
/// rounds.
pub fn reduce_iterate(
    g: &Graph,
    variant: Variant,
    max_rounds: usize,
) -> Result<Reduction, ReduceError> {
    reduce(
        g,
        &ReduceOptions {
            max_rounds,
            ..ReduceOptions::iterated(variant)
        },
    )
}
