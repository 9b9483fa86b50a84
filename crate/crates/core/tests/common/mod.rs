#![allow(dead_code)]

use rule1_core::generators::*;
use rule1_core::oracle::{exact_annotated_gamma, AnnotatedInstance};
use rule1_core::{Graph, Reduction};

pub const PS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

/// `count` seeded G(n, p) graphs; `p` cycles through [`PS`] and `n` steps
/// through `lo..=hi` once per full cycle of `p`.
pub fn random_corpus(count: usize, lo: usize, hi: usize, seed_base: u64) -> Vec<Graph> {
    let span = hi - lo + 1;
    (0..count)
        .map(|i| {
            gnp(
                lo + (i / PS.len()) % span,
                PS[i % PS.len()],
                seed_base + i as u64,
            )
        })
        .collect()
}

pub fn fixtures() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("fig3".to_string(), fig3()),
        ("barbell".to_string(), barbell_cycle()),
        ("star5".to_string(), star(5)),
    ];
    for copies in 1..=3 {
        out.push((
            format!("fig5x{copies}"),
            gadget_path(GadgetKind::Fig5, copies),
        ));
        out.push((
            format!("fig6x{copies}"),
            gadget_path(GadgetKind::Fig6, copies),
        ));
    }
    for k in 2..=4 {
        out.push((format!("fig4k{k}"), fig4_family(k)));
    }
    for n in [1, 2, 3, 5, 8] {
        out.push((format!("K{n}"), complete(n)));
        out.push((format!("P{n}"), path(n)));
        out.push((format!("C{n}"), cycle(n)));
    }
    out
}

pub fn residual_instance(red: &Reduction) -> AnnotatedInstance {
    AnnotatedInstance {
        graph: red.residual.clone(),
        covered: red.covered.clone(),
    }
}

pub fn exact_residual(red: &Reduction) -> (usize, Vec<u32>) {
    exact_annotated_gamma(&residual_instance(red)).expect("residual within exact solver limit")
}
