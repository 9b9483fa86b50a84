use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use rule1_core::bench::{run_bench, BenchConfig};
use rule1_core::generators::{self, GadgetKind};
use rule1_core::greedy::{derive_seeds, greedy_best_of};
use rule1_core::io::{self, Format, ReportRow, Sidecar};
use rule1_core::reducer::DEFAULT_MAX_ROUNDS;
use rule1_core::verify::verify_composed;
use rule1_core::{reduce, Graph, ReduceError, ReduceOptions, Reduction, Variant};

#[derive(Parser)]
#[command(
    name = "rule1",
    version,
    about = "Rule 1 reductions for Dominating Set"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Naive,
    Linear,
    Plus,
    Extra,
}

impl From<Rule> for Variant {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Naive => Variant::Naive,
            Rule::Linear => Variant::Linear,
            Rule::Plus => Variant::Plus,
            Rule::Extra => Variant::Extra,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum After {
    None,
    Naive,
    Linear,
    Plus,
    Extra,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Gr,
    El,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gnp,
    Complete,
    Path,
    Cycle,
    Star,
    Fig4,
    Fig5,
    Fig6,
    Barbell,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one rule variant and write the residual instance.
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum)]
        rule: Rule,
        /// Repeat until nothing changes (plus and extra only).
        #[arg(long)]
        iterate: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        /// Add isolated uncovered vertices to the solution.
        #[arg(long)]
        fix_isolated: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Input format; defaults to the file extension (`.el` = edge list).
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Best-of-runs greedy, optionally on a reduced instance.
    Greedy {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "none")]
        after: After,
        #[arg(long)]
        iterate: bool,
        /// Write fixed set, map and residual solution for `verify`.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Generate a graph family as `.gr`.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run rules over every `.gr`/`.el` file of a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_delimiter = ',', value_enum, required = true)]
        rules: Vec<Rule>,
        #[arg(long)]
        timeout_s: Option<f64>,
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        iterate: bool,
    },
    /// Check that fixed vertices plus a residual solution dominate the input.
    Verify {
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
    Io(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<(), Failure>;

fn format_of(f: Option<InputFormat>) -> Option<Format> {
    f.map(|f| match f {
        InputFormat::Gr => Format::Gr,
        InputFormat::El => Format::EdgeList,
    })
}

fn load(path: &Path, format: Option<InputFormat>) -> Result<(Graph, f64), Failure> {
    let raw = io::read_raw(path, format_of(format))
        .with_context(|| format!("reading {}", path.display()))?;
    let start = Instant::now();
    let g = raw
        .build()
        .with_context(|| format!("building {}", path.display()))?;
    Ok((g, start.elapsed().as_secs_f64() * 1e3))
}

fn create(path: &Path) -> anyhow::Result<File> {
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn check_iterate(variant: Variant, iterate: bool) -> CmdResult {
    if iterate && matches!(variant, Variant::Naive | Variant::Linear) {
        return Err(Failure::Usage(format!(
            "--iterate needs --rule plus or extra, got {variant}"
        )));
    }
    Ok(())
}

fn run_reduce(g: &Graph, opts: &ReduceOptions) -> Result<Reduction, Failure> {
    reduce(g, opts).map_err(|e| match e {
        ReduceError::ZeroRounds | ReduceError::NotIterable(_) => Failure::Usage(e.to_string()),
        other => Failure::Io(anyhow!(other)),
    })
}

fn instance_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    input: &Path,
    rule: Rule,
    iterate: bool,
    max_rounds: usize,
    fix_isolated: bool,
    out: Option<&Path>,
    sidecar: Option<&Path>,
    report: Option<&Path>,
    format: Option<InputFormat>,
) -> CmdResult {
    let variant = Variant::from(rule);
    check_iterate(variant, iterate)?;
    if max_rounds == 0 {
        return Err(Failure::Usage("--max-rounds must be at least 1".into()));
    }
    let (g, build_ms) = load(input, format)?;
    let opts = ReduceOptions {
        iterate,
        max_rounds,
        fix_isolated,
        ..ReduceOptions::new(variant)
    };
    let start = Instant::now();
    let red = run_reduce(&g, &opts)?;
    let reduce_ms = start.elapsed().as_secs_f64() * 1e3;

    if let Some(path) = out {
        io::write_gr(&red.residual, create(path)?).context("writing residual")?;
    }
    if let Some(path) = sidecar {
        io::write_sidecar(&Sidecar::from_reduction(&red), create(path)?)
            .context("writing sidecar")?;
    }
    let row = ReportRow::finished(
        &instance_name(input),
        &g,
        variant.name(),
        &red.report,
        build_ms,
        reduce_ms,
    );
    if let Some(path) = report {
        io::write_report_csv(std::slice::from_ref(&row), create(path)?)
            .context("writing report")?;
    }
    println!(
        "{}: n={} m={} rounds={} fixed={} removed_nodes={} removed_edges={} residual_n={} residual_m={}",
        variant,
        g.len(),
        g.num_edges(),
        red.report.rounds,
        red.report.fixed.len(),
        red.report.removed.len(),
        red.report.removed_edges,
        red.residual.len(),
        red.residual.num_edges()
    );
    Ok(())
}

fn cmd_greedy(
    input: &Path,
    runs: usize,
    seed: u64,
    after: After,
    iterate: bool,
    sidecar: Option<&Path>,
    format: Option<InputFormat>,
) -> CmdResult {
    if runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let (g, _) = load(input, format)?;
    let variant = match after {
        After::None => None,
        After::Naive => Some(Variant::Naive),
        After::Linear => Some(Variant::Linear),
        After::Plus => Some(Variant::Plus),
        After::Extra => Some(Variant::Extra),
    };
    let red = match variant {
        Some(v) => {
            check_iterate(v, iterate)?;
            Some(run_reduce(
                &g,
                &ReduceOptions {
                    iterate,
                    ..ReduceOptions::new(v)
                },
            )?)
        }
        None if iterate => {
            return Err(Failure::Usage(
                "--iterate needs --after plus or extra".into(),
            ))
        }
        None => None,
    };
    let seeds = derive_seeds(seed, runs);
    let (fixed, residual_solution, mut sc) = match &red {
        Some(red) => {
            let sol = greedy_best_of(&red.residual, &red.covered, &seeds);
            (
                red.report.fixed.sorted(),
                sol.sorted(),
                Sidecar::from_reduction(red),
            )
        }
        None => {
            let sol = greedy_best_of(&g, &[], &seeds);
            let identity = Sidecar {
                map: g.vertices().map(|u| (u, u)).collect(),
                ..Sidecar::default()
            };
            (Vec::new(), sol.sorted(), identity)
        }
    };
    sc.solution = Some(residual_solution);
    let lifted = sc.lifted_solution().map_err(|e| Failure::Io(anyhow!(e)))?;
    if let Some(path) = sidecar {
        io::write_sidecar(&sc, create(path)?).context("writing sidecar")?;
    }
    let total = fixed.len() + lifted.len();
    println!("size={total} fixed={} greedy={}", fixed.len(), lifted.len());
    verify_composed(&g, &fixed, &lifted).map_err(|missing| {
        Failure::Verification(format!("{} vertices left undominated", missing.len()))
    })
}

fn cmd_gen(
    family: Family,
    n: Option<usize>,
    p: Option<f64>,
    k: Option<usize>,
    copies: usize,
    seed: u64,
    out: &Path,
) -> CmdResult {
    let need_n = || n.ok_or_else(|| Failure::Usage("this family needs --n".into()));
    let g = match family {
        Family::Gnp => {
            let p = p.ok_or_else(|| Failure::Usage("gnp needs --p".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage(format!("--p {p} outside [0, 1]")));
            }
            generators::gnp(need_n()?, p, seed)
        }
        Family::Complete => generators::complete(need_n()?),
        Family::Path => generators::path(need_n()?),
        Family::Cycle => generators::cycle(need_n()?),
        Family::Star => generators::star(need_n()?),
        Family::Fig4 => {
            let k = k.ok_or_else(|| Failure::Usage("fig4 needs --k".into()))?;
            if k < 2 {
                return Err(Failure::Usage("fig4 needs --k >= 2".into()));
            }
            generators::fig4_family(k)
        }
        Family::Fig5 | Family::Fig6 => {
            if copies == 0 {
                return Err(Failure::Usage("--copies must be at least 1".into()));
            }
            let kind = if matches!(family, Family::Fig5) {
                GadgetKind::Fig5
            } else {
                GadgetKind::Fig6
            };
            generators::gadget_path(kind, copies)
        }
        Family::Barbell => generators::barbell_cycle(),
    };
    io::write_gr(&g, create(out)?).context("writing graph")?;
    Ok(())
}

fn cmd_bench(
    dir: &Path,
    rules: &[Rule],
    timeout_s: Option<f64>,
    report: &Path,
    jobs: usize,
    iterate: bool,
) -> CmdResult {
    let timeout = match timeout_s {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return Err(Failure::Usage(format!("invalid --timeout-s {t}")))
        }
        t => t.map(Duration::from_secs_f64),
    };
    let cfg = BenchConfig {
        rules: rules.iter().map(|&r| r.into()).collect(),
        timeout,
        jobs: jobs.max(1),
        iterate,
    };
    let rows = run_bench(dir, &cfg).with_context(|| format!("reading corpus {}", dir.display()))?;
    io::write_report_csv(&rows, create(report)?).context("writing report")?;
    println!("{} rows", rows.len());
    Ok(())
}

fn cmd_verify(input: &Path, solution: &Path, format: Option<InputFormat>) -> CmdResult {
    let (g, _) = load(input, format)?;
    let file = File::open(solution).with_context(|| format!("opening {}", solution.display()))?;
    let sc = io::read_sidecar(BufReader::new(file))
        .with_context(|| format!("reading {}", solution.display()))?;
    let lifted = sc.lifted_solution().map_err(|e| Failure::Io(anyhow!(e)))?;
    if let Some(&bad) = sc
        .fixed
        .iter()
        .chain(&lifted)
        .find(|&&u| u as usize >= g.len())
    {
        return Err(Failure::Verification(format!(
            "vertex {} not in the input graph",
            bad + 1
        )));
    }
    match verify_composed(&g, &sc.fixed, &lifted) {
        Ok(()) => {
            println!(
                "ok: {} vertices dominate the input",
                sc.fixed.len() + lifted.len()
            );
            Ok(())
        }
        Err(missing) => Err(Failure::Verification(format!(
            "{} vertices undominated, first {}",
            missing.len(),
            missing[0] + 1
        ))),
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Reduce {
            input,
            rule,
            iterate,
            max_rounds,
            fix_isolated,
            out,
            sidecar,
            report,
            format,
        } => cmd_reduce(
            &input,
            rule,
            iterate,
            max_rounds,
            fix_isolated,
            out.as_deref(),
            sidecar.as_deref(),
            report.as_deref(),
            format,
        ),
        Command::Greedy {
            input,
            runs,
            seed,
            after,
            iterate,
            sidecar,
            format,
        } => cmd_greedy(
            &input,
            runs,
            seed,
            after,
            iterate,
            sidecar.as_deref(),
            format,
        ),
        Command::Gen {
            family,
            n,
            p,
            k,
            copies,
            seed,
            out,
        } => cmd_gen(family, n, p, k, copies, seed, &out),
        Command::Bench {
            dir,
            rules,
            timeout_s,
            report,
            jobs,
            iterate,
        } => cmd_bench(&dir, &rules, timeout_s, &report, jobs, iterate),
        Command::Verify {
            input,
            solution,
            format,
        } => cmd_verify(&input, &solution, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let code = match run(cli) {
        Ok(()) => 0,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            3
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
