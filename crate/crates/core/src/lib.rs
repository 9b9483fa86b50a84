//! Linear-time Rule 1 reductions for Dominating Set.
//!
//! A [`Graph`] is an immutable CSR adjacency structure. Reductions run on a
//! [`ReductionState`] overlay and are turned into a fresh residual graph by
//! [`compact`]. The [`pipeline`] module computes the suitable set, [`reducer`]
//! applies the rule variants, and [`oracle`] holds slow direct implementations
//! used to cross-check everything else.

pub mod bench;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod reducer;
pub mod state;
pub mod verify;

pub use graph::{Graph, GraphError, Node, VertexSet, NO_NODE};
pub use greedy::{greedy, greedy_best_of, TieBreaker};
pub use pipeline::{canonical_reference, suitable_set, RelationSet, WitnessRelation};
pub use reducer::{
    apply_reduction, naive_reduce, reduce, reduce_iterate, reduce_once, ReduceError, ReduceOptions,
    Reduction, ReductionReport, Variant,
};
pub use state::{compact, Compacted, ReductionState};
