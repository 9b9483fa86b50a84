//! Domination checks by full scan.

use crate::graph::{Graph, Node};

/// Vertices that are neither covered nor adjacent to (or in) `d`.
pub fn undominated(g: &Graph, covered: &[bool], d: &[Node]) -> Vec<Node> {
    let mut dom = if covered.is_empty() {
        vec![false; g.len()]
    } else {
        covered.to_vec()
    };
    for &u in d {
        for v in g.closed_neighbors(u) {
            dom[v as usize] = true;
        }
    }
    g.vertices().filter(|&u| !dom[u as usize]).collect()
}

/// Whether `d` dominates every uncovered vertex. An empty `covered` slice
/// means nothing is covered.
pub fn dominates(g: &Graph, covered: &[bool], d: &[Node]) -> bool {
    undominated(g, covered, d).is_empty()
}

/// Checks a full solution of the input graph assembled from the fixed set and
/// a residual solution already translated to input ids.
pub fn verify_composed(
    g: &Graph,
    fixed: &[Node],
    residual_solution: &[Node],
) -> Result<(), Vec<Node>> {
    let d: Vec<Node> = fixed.iter().chain(residual_solution).copied().collect();
    let missing = undominated(g, &[], &d);
    if missing.is_empty() {
        Ok(())
    } else {
        Err(missing)
    }
}
