//! Deterministic graph families for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Node};

fn build(n: usize, edges: Vec<(Node, Node)>) -> Graph {
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (u as u64, v as u64)))
        .expect("generator produced an out-of-range id")
}

/// Gilbert `G(n, p)`: every unordered pair is an edge independently with
/// probability `p`. Pairs are enumerated with geometric skips, so the cost is
/// proportional to the number of edges drawn.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p = {p} outside [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return build(n, edges);
    }
    if p >= 1.0 {
        return complete(n);
    }
    let log_q = (1.0 - p).ln();
    let (mut v, mut w) = (1i64, -1i64);
    let n = n as i64;
    while v < n {
        let r: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
        w += 1 + (r.ln() / log_q).floor() as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((w as Node, v as Node));
        }
    }
    build(n as usize, edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n as Node {
        for v in u + 1..n as Node {
            edges.push((u, v));
        }
    }
    build(n, edges)
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n as Node).map(|v| (v - 1, v)).collect())
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n as Node).map(|v| (v - 1, v)).collect();
    if n >= 3 {
        edges.push((n as Node - 1, 0));
    }
    build(n, edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves as Node).map(|v| (0, v)).collect())
}

/// The six-vertex graph in which one vertex plays different neighbor types for
/// different references. Ids: rho1=0, rho1'=1, rho2=2, rho3=3, v=4, x=5.
pub fn fig3() -> Graph {
    build(
        6,
        vec![
            (5, 3),
            (0, 3),
            (0, 4),
            (0, 2),
            (3, 4),
            (3, 2),
            (3, 1),
            (4, 2),
            (4, 1),
            (2, 1),
        ],
    )
}

/// Vertex ids of the gadget hanging off `r_i` in [`fig4_family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fig4Gadget {
    pub r: Node,
    pub a: Node,
    pub b: Node,
    pub cycle: [Node; 3],
}

/// Index helpers for [`fig4_family`]: `L = 0..k`, `R = k..2k`, then one block of
/// five gadget vertices `(a_i, b_i, g1, g2, g3)` per `r_i`.
pub fn fig4_gadget(k: usize, i: usize) -> Fig4Gadget {
    let base = (2 * k + 5 * i) as Node;
    Fig4Gadget {
        r: (k + i) as Node,
        a: base,
        b: base + 1,
        cycle: [base + 2, base + 3, base + 4],
    }
}

/// Adversarial family on which per-reference neighborhood classification costs
/// `Theta(k^3)` while no reduction applies. `L` and `R` are `k`-cliques, every
/// `l_i` sees all of `R`, and each `r_i` carries a gadget: the triangle
/// `r_i, a_i, b_i` plus a 4-cycle `a_i, g1, g2, g3`. `n = 7k`,
/// `m = 2 C(k,2) + k^2 + 7k`.
pub fn fig4_family(k: usize) -> Graph {
    assert!(k >= 2, "fig4_family needs k >= 2");
    let mut edges = Vec::new();
    for side in [0, k] {
        for i in 0..k {
            for j in i + 1..k {
                edges.push(((side + i) as Node, (side + j) as Node));
            }
        }
    }
    for l in 0..k {
        for r in k..2 * k {
            edges.push((l as Node, r as Node));
        }
    }
    for i in 0..k {
        let g = fig4_gadget(k, i);
        let [g1, g2, g3] = g.cycle;
        edges.extend([(g.r, g.a), (g.r, g.b), (g.a, g.b)]);
        edges.extend([(g.a, g1), (g1, g2), (g2, g3), (g3, g.a)]);
    }
    build(7 * k, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    /// 6-path `x - rho - u - v - sigma - y`.
    Fig5,
    /// 7-path `x - rho - u - c - v - sigma - y`.
    Fig6,
}

/// `copies` gadget paths chained by identifying the last vertex of one copy
/// with the first vertex of the next. The result is a path on
/// `1 + copies * (len - 1)` vertices.
pub fn gadget_path(kind: GadgetKind, copies: usize) -> Graph {
    assert!(copies >= 1);
    let len = match kind {
        GadgetKind::Fig5 => 6,
        GadgetKind::Fig6 => 7,
    };
    path(1 + copies * (len - 1))
}

/// Extra-rule fixture: 6-cycle `c1..c6` (ids 0..5), `u` (6) adjacent to `c1, c3`,
/// `v` (7) adjacent to `c4, c6`, edge `u - v`, and pendant paths
/// `x (8) - rho (9) - u` and `y (10) - sigma (11) - v`.
pub fn barbell_cycle() -> Graph {
    let (u, v, x, rho, y, sigma) = (6, 7, 8, 9, 10, 11);
    let mut edges: Vec<(Node, Node)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend([(u, 0), (u, 2), (v, 3), (v, 5), (u, v)]);
    edges.extend([(x, rho), (rho, u), (y, sigma), (sigma, v)]);
    build(12, edges)
}
