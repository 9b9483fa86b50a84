//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

mod common;

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{exact_residual, fixtures, random_corpus};
use rule1_core::generators::*;
use rule1_core::greedy::{derive_seeds, greedy_best_of, DEFAULT_RUNS};
use rule1_core::io::{read_sidecar, Sidecar};
use rule1_core::oracle::{exact_gamma, suitable_set_direct};
use rule1_core::pipeline::{compute_proper_partition, compute_superset, filter_suitable, Work};
use rule1_core::reducer::{apply_reduction, reduce_once_with};
use rule1_core::verify::verify_composed;
use rule1_core::{
    reduce, reduce_once, suitable_set, Graph, Node, ReduceOptions, Reduction, ReductionState,
    Variant,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion1_corpus() -> Vec<Graph> {
    random_corpus(500, 1, 12, 0)
}

fn criterion2_corpus() -> Vec<Graph> {
    random_corpus(300, 2, 14, 10_000)
}

fn criterion9_corpus() -> Vec<Graph> {
    (0..100).map(|i| gnp(200, 0.05, 20_000 + i)).collect()
}

/// Every instance used by the set-level criteria.
fn full_corpus() -> Vec<(String, Graph)> {
    let mut all = fixtures();
    for (name, gs) in [
        ("c1", criterion1_corpus()),
        ("c2", criterion2_corpus()),
        ("c9", criterion9_corpus()),
    ] {
        all.extend(
            gs.into_iter()
                .enumerate()
                .map(|(i, g)| (format!("{name}#{i}"), g)),
        );
    }
    all
}

fn once(g: &Graph, v: Variant) -> Reduction {
    reduce(g, &ReduceOptions::new(v)).unwrap()
}

fn all_reductions(g: &Graph) -> Vec<(&'static str, Reduction)> {
    let mut out: Vec<_> = Variant::ALL
        .iter()
        .map(|&v| (v.name(), once(g, v)))
        .collect();
    out.push((
        "extra-iterated",
        reduce(g, &ReduceOptions::iterated(Variant::Extra)).unwrap(),
    ));
    out
}

fn c1_pipeline_exactness() -> Outcome {
    let start = Instant::now();
    let corpus = criterion1_corpus();
    let mut mismatches = 0;
    for g in &corpus {
        let sp = compute_superset(g);
        let f = compute_proper_partition(g, &sp);
        let fast = filter_suitable(g, &sp, &f);
        if fast.pairs() != suitable_set_direct(g).pairs() {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 30.0,
        format!(
            "{} graphs, {mismatches} mismatches, {secs:.2}s",
            corpus.len()
        ),
    )
}

fn c2_safety() -> Outcome {
    let start = Instant::now();
    let corpus = criterion2_corpus();
    let mut bad = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let gamma = exact_gamma(g);
        for (name, red) in all_reductions(g) {
            let rest = exact_residual(&red).0;
            if gamma != red.report.fixed.len() + rest {
                bad.push(format!("#{i}/{name}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 300.0,
        format!(
            "{} graphs x 5 variants, {} violations {:?}, {secs:.2}s",
            corpus.len(),
            bad.len(),
            bad
        ),
    )
}

fn c3_fixtures() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: &str, got: Vec<Node>, want: &[Node]| {
        if got != want {
            failures.push(format!("{label}: got {got:?}, want {want:?}"));
        }
    };
    // fig5: x=0 rho=1 u=2 v=3 sigma=4 y=5
    let f5 = gadget_path(GadgetKind::Fig5, 1);
    let lin = once(&f5, Variant::Linear).report;
    check("fig5 linear removed", lin.removed.sorted(), &[0, 2, 3, 5]);
    check("fig5 linear fixed", lin.fixed.sorted(), &[1, 4]);
    check(
        "fig5 naive removed",
        once(&f5, Variant::Naive).report.removed.sorted(),
        &[0, 5],
    );
    // fig6: x=0 rho=1 u=2 c=3 v=4 sigma=5 y=6
    let f6 = gadget_path(GadgetKind::Fig6, 1);
    check(
        "fig6 linear removed",
        once(&f6, Variant::Linear).report.removed.sorted(),
        &[0, 6],
    );
    check(
        "fig6 plus removed",
        once(&f6, Variant::Plus).report.removed.sorted(),
        &[0, 2, 4, 6],
    );
    // fig3: rho3 = 3
    let lin = once(&fig3(), Variant::Linear).report;
    check("fig3 linear fixed", lin.fixed.sorted(), &[3]);
    check(
        "fig3 linear removed",
        lin.removed.sorted(),
        &[0, 1, 2, 4, 5],
    );
    for k in 2..=4 {
        let g = fig4_family(k);
        check(&format!("fig4 k={k} S"), suitable_set(&g).references(), &[]);
        check(
            &format!("fig4 k={k} S direct"),
            suitable_set_direct(&g).references(),
            &[],
        );
        let naive = once(&g, Variant::Naive).report;
        check(
            &format!("fig4 k={k} naive removed"),
            naive.removed.sorted(),
            &[],
        );
        check(
            &format!("fig4 k={k} naive fixed"),
            naive.fixed.sorted(),
            &[],
        );
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "all fixtures exact".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn c4_dominance() -> Outcome {
    let corpus = full_corpus();
    let (mut fixed_viol, mut subset_viol, mut edge_viol) = (Vec::new(), Vec::new(), Vec::new());
    for (name, g) in &corpus {
        let naive = once(g, Variant::Naive).report;
        let linear = once(g, Variant::Linear).report;
        let plus = once(g, Variant::Plus).report;
        let extra = once(g, Variant::Extra).report;
        if linear.fixed.len() < naive.fixed.len() {
            fixed_viol.push(format!(
                "{name} ({} < {})",
                linear.fixed.len(),
                naive.fixed.len()
            ));
        }
        if !linear.removed.iter().all(|u| plus.removed.contains(u)) {
            subset_viol.push(name.clone());
        }
        if plus.removed_edges > extra.removed_edges {
            edge_viol.push(name.clone());
        }
    }
    let pass = fixed_viol.is_empty() && subset_viol.is_empty() && edge_viol.is_empty();
    outcome(
        pass,
        format!(
            "{} instances; fixed(Linear) < fixed(Naive): {:?}; Linear not subset of Plus: {:?}; edges(Plus) > edges(Extra): {:?}",
            corpus.len(),
            fixed_viol,
            subset_viol,
            edge_viol
        ),
    )
}

fn c5_order_independence() -> Outcome {
    let corpus = random_corpus(100, 1, 12, 30_000);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let refs = suitable_set(g).references();
        for v in [Variant::Linear, Variant::Plus, Variant::Extra] {
            let mut seen: Option<(Vec<Node>, Vec<Node>, usize, Graph)> = None;
            for _ in 0..5 {
                let mut r = refs.clone();
                r.shuffle(&mut rng);
                let mut st = ReductionState::new(g);
                let rep = apply_reduction(g, &mut st, &r, v, &mut Work::default()).unwrap();
                let key = (
                    rep.fixed.sorted(),
                    rep.removed.sorted(),
                    rep.removed_edges,
                    rule1_core::compact(g, &st).graph,
                );
                match &seen {
                    None => seen = Some(key),
                    Some(first) if *first != key => bad.push(format!("#{i}/{v}")),
                    _ => {}
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("100 graphs x 3 variants x 5 permutations, differing: {bad:?}"),
    )
}

/// Mean wall-clock of `reduce`, best of five batches of at least 20 ms.
fn time_reduce(g: &Graph, v: Variant) -> Duration {
    let opts = ReduceOptions::new(v);
    (0..5)
        .map(|_| {
            let start = Instant::now();
            let mut iters = 0u32;
            while iters == 0 || start.elapsed() < Duration::from_millis(20) {
                black_box(reduce(black_box(g), &opts).unwrap());
                iters += 1;
            }
            start.elapsed() / iters
        })
        .min()
        .unwrap()
}

fn c6_runtime_scaling() -> Outcome {
    let ks = [50, 100, 200];
    let graphs: Vec<_> = ks.iter().map(|&k| fig4_family(k)).collect();
    let naive: Vec<f64> = graphs
        .iter()
        .map(|g| time_reduce(g, Variant::Naive).as_secs_f64())
        .collect();
    let linear: Vec<f64> = graphs
        .iter()
        .map(|g| time_reduce(g, Variant::Linear).as_secs_f64())
        .collect();
    let naive_growth = [naive[1] / naive[0], naive[2] / naive[1]];
    let linear_growth = [linear[1] / linear[0], linear[2] / linear[1]];
    let speedup = naive[2] / linear[2];
    let pass = naive_growth.iter().all(|&r| r >= 6.0)
        && linear_growth.iter().all(|&r| r <= 5.0)
        && speedup >= 10.0
        && naive.iter().chain(&linear).all(|&t| t < 60.0);
    outcome(
        pass,
        format!(
            "naive ms {:.3?} growth {:.2?}; linear ms {:.3?} growth {:.2?}; speedup at k=200 {speedup:.1}x",
            naive.iter().map(|t| t * 1e3).collect::<Vec<_>>(),
            naive_growth,
            linear.iter().map(|t| t * 1e3).collect::<Vec<_>>(),
            linear_growth
        ),
    )
}

fn c7_work_linearity() -> Outcome {
    let mut corpus = full_corpus();
    for k in [50, 100, 200] {
        corpus.push((format!("fig4k{k}"), fig4_family(k)));
    }
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (name, g) in &corpus {
        let budget = 64 * (g.len() + g.num_edges()) as u64;
        for v in [Variant::Linear, Variant::Plus, Variant::Extra] {
            let mut st = ReductionState::new(g);
            let mut work = Work::default();
            reduce_once_with(g, &mut st, v, false, None, &mut work).unwrap();
            let size = (g.len() + g.num_edges()).max(1) as f64;
            worst = worst.max(work.visits as f64 / size);
            if work.visits > budget {
                bad.push(format!("{name}/{v}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} instances, max visits/(n+m) = {worst:.2}, over budget: {bad:?}",
            corpus.len()
        ),
    )
}

fn c8_iteration() -> Outcome {
    let g = gadget_path(GadgetKind::Fig6, 3);
    let red = reduce(&g, &ReduceOptions::iterated(Variant::Extra)).unwrap();
    let rounds = red.report.rounds;
    // one more covered-aware round on the residual must change nothing
    let mut st = ReductionState::with_covered(&red.residual, red.covered.clone());
    let extra_round = reduce_once_with(
        &red.residual,
        &mut st,
        Variant::Extra,
        true,
        None,
        &mut Work::default(),
    )
    .unwrap();
    let fixpoint = !extra_round.changed();
    let iter_ok = fixpoint && (2..=1024).contains(&rounds);

    let corpus = random_corpus(100, 2, 14, 40_000);
    let mut new_fixes = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let first = once(g, Variant::Linear);
        let mut st = ReductionState::with_covered(&first.residual, first.covered.clone());
        let second = reduce_once(&first.residual, &mut st, Variant::Linear).unwrap();
        if !second.fixed.is_empty() {
            new_fixes.push(format!("#{i}:{:?}", first.lift(second.fixed.sorted())));
        }
    }
    outcome(
        iter_ok && new_fixes.is_empty(),
        format!(
            "fig6x3 iterated Extra: rounds={rounds} fixpoint={fixpoint}; second Linear round fixed new nodes on {} of 100 graphs {:?}",
            new_fixes.len(),
            new_fixes
        ),
    )
}

fn greedy_sizes(g: &Graph, seeds: &[u64]) -> (usize, usize) {
    let plain = greedy_best_of(g, &[], seeds).len();
    let red = once(g, Variant::Extra);
    let after = red.report.fixed.len() + greedy_best_of(&red.residual, &red.covered, seeds).len();
    (plain, after)
}

fn c9_greedy() -> Outcome {
    let corpus = criterion9_corpus();
    let seeds = derive_seeds(9, DEFAULT_RUNS);
    let (mut plain, mut after) = (0usize, 0usize);
    for g in &corpus {
        let (p, a) = greedy_sizes(g, &seeds);
        plain += p;
        after += a;
    }
    let (mp, ma) = (
        plain as f64 / corpus.len() as f64,
        after as f64 / corpus.len() as f64,
    );
    outcome(
        ma <= mp * 1.005,
        format!("mean greedy {mp:.2}, mean fixed+greedy after Extra {ma:.2}"),
    )
}

/// Routes a composed solution through the sidecar format, as `verify` does.
fn verify_via_sidecar(g: &Graph, red: &Reduction, residual_solution: Vec<Node>) -> bool {
    let mut sc = Sidecar::from_reduction(red);
    sc.solution = Some(residual_solution);
    let back = read_sidecar(sc.to_string().as_bytes()).unwrap();
    let lifted = back.lifted_solution().unwrap();
    verify_composed(g, &back.fixed, &lifted).is_ok()
}

fn c10_verification() -> Outcome {
    let seeds = derive_seeds(9, DEFAULT_RUNS);
    let mut checked = 0;
    let mut bad = Vec::new();
    for (i, g) in criterion2_corpus().iter().enumerate() {
        for (name, red) in all_reductions(g) {
            let exact = exact_residual(&red).1;
            let greedy = greedy_best_of(&red.residual, &red.covered, &seeds).sorted();
            for sol in [exact, greedy] {
                checked += 1;
                if !verify_via_sidecar(g, &red, sol) {
                    bad.push(format!("c2#{i}/{name}"));
                }
            }
        }
    }
    for (i, g) in criterion9_corpus().iter().enumerate() {
        let red = once(g, Variant::Extra);
        let sol = greedy_best_of(&red.residual, &red.covered, &seeds).sorted();
        checked += 1;
        if !verify_via_sidecar(g, &red, sol) {
            bad.push(format!("c9#{i}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} compositions, rejected: {bad:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("pipeline exactness", c1_pipeline_exactness),
        ("safety / gamma preservation", c2_safety),
        ("figure fixtures", c3_fixtures),
        ("dominance and monotonicity", c4_dominance),
        ("order independence", c5_order_independence),
        ("runtime scaling", c6_runtime_scaling),
        ("work accounting", c7_work_linearity),
        ("iteration behavior", c8_iteration),
        ("greedy interaction", c9_greedy),
        ("verification gate", c10_verification),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", i + 1, out.detail);
        failed += usize::from(!out.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
