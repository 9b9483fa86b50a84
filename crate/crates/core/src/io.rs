//! Text formats: PACE-style `.gr`, bare edge lists, reduction sidecars and
//! CSV reports. Ids are 1-based on disk (edge lists excepted) and 0-based in
//! memory.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Node};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Vertex count plus a raw 0-based edge list, before normalization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<(u64, u64)>,
}

impl RawGraph {
    pub fn build(&self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, self.edges.iter().copied())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `p ds <n> <m>` header, 1-based ids, `c` comment lines.
    Gr,
    /// One `<u> <v>` pair per line, 0-based, `n` = max id + 1.
    EdgeList,
}

impl Format {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("el") => Format::EdgeList,
            _ => Format::Gr,
        }
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(u64, u64), IoError> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<u64, IoError> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, "expected two vertex ids"))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("`{tok}` is not a vertex id")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_err(line, "trailing data after edge"));
    }
    Ok(pair)
}

pub fn parse_gr(reader: impl BufRead) -> Result<RawGraph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = RawGraph::default();
    let mut last = 0;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        last = lineno;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('c') {
            continue;
        }
        if text.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(lineno, "duplicate header"));
            }
            let f: Vec<&str> = text.split_whitespace().collect();
            let parsed = match f.as_slice() {
                ["p", "ds", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            let (n, m) = parsed
                .ok_or_else(|| parse_err(lineno, "malformed header, expected `p ds <n> <m>`"))?;
            header = Some((n, m));
            raw.n = n;
            raw.edges.reserve(m);
            continue;
        }
        let Some((n, m)) = header else {
            return Err(parse_err(lineno, "edge before `p ds` header"));
        };
        if raw.edges.len() == m {
            return Err(parse_err(
                lineno,
                format!("more than the {m} declared edges"),
            ));
        }
        let (u, v) = parse_pair(lineno, text)?;
        for id in [u, v] {
            if id == 0 || id > n as u64 {
                return Err(parse_err(
                    lineno,
                    format!("vertex id {id} outside [1, {n}]"),
                ));
            }
        }
        raw.edges.push((u - 1, v - 1));
    }
    match header {
        None => Err(parse_err(last + 1, "missing `p ds` header")),
        Some((_, m)) if raw.edges.len() < m => Err(parse_err(
            last + 1,
            format!("truncated: {} of {m} edges", raw.edges.len()),
        )),
        Some(_) => Ok(raw),
    }
}

pub fn parse_edge_list(reader: impl BufRead) -> Result<RawGraph, IoError> {
    let mut raw = RawGraph::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') || text.starts_with('%') {
            continue;
        }
        let (u, v) = parse_pair(i + 1, text)?;
        raw.n = raw.n.max(u.max(v) as usize + 1);
        raw.edges.push((u, v));
    }
    Ok(raw)
}

pub fn read_gr(reader: impl Read) -> Result<Graph, IoError> {
    Ok(parse_gr(BufReader::new(reader))?.build()?)
}

pub fn read_raw(path: &Path, format: Option<Format>) -> Result<RawGraph, IoError> {
    let reader = BufReader::new(File::open(path)?);
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Gr => parse_gr(reader),
        Format::EdgeList => parse_edge_list(reader),
    }
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, IoError> {
    Ok(read_raw(path, format)?.build()?)
}

/// Header plus edges in lexicographic order, 1-based.
pub fn write_gr(g: &Graph, writer: impl Write) -> io::Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "p ds {} {}", g.len(), g.num_edges())?;
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    w.flush()
}

pub fn write_gr_file(g: &Graph, path: &Path) -> io::Result<()> {
    write_gr(g, File::create(path)?)
}

/// Reduction artifacts that accompany a residual `.gr` file. All ids are
/// 0-based in memory; `fixed` and `covered` use input ids, `map` pairs are
/// `(residual id, input id)`, and `solution` lists residual ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sidecar {
    pub fixed: Vec<Node>,
    pub covered: Vec<Node>,
    pub map: Vec<(Node, Node)>,
    pub solution: Option<Vec<Node>>,
}

impl Sidecar {
    pub fn from_reduction(red: &crate::reducer::Reduction) -> Self {
        Self {
            fixed: red.report.fixed.sorted(),
            covered: (0..red.residual.len())
                .filter(|&v| red.covered[v])
                .map(|v| red.original_id[v])
                .collect(),
            map: red
                .original_id
                .iter()
                .enumerate()
                .map(|(new, &old)| (new as Node, old))
                .collect(),
            solution: None,
        }
    }

    /// Residual solution translated to input ids.
    pub fn lifted_solution(&self) -> Result<Vec<Node>, String> {
        let Some(sol) = &self.solution else {
            return Ok(Vec::new());
        };
        let mut old = vec![None; self.map.len()];
        for &(new, o) in &self.map {
            if let Some(slot) = old.get_mut(new as usize) {
                *slot = Some(o);
            }
        }
        sol.iter()
            .map(|&v| {
                old.get(v as usize)
                    .copied()
                    .flatten()
                    .ok_or_else(|| format!("residual vertex {} has no map entry", v + 1))
            })
            .collect()
    }
}

impl fmt::Display for Sidecar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fixed:")?;
        for u in &self.fixed {
            writeln!(f, "{}", u + 1)?;
        }
        writeln!(f, "covered:")?;
        for u in &self.covered {
            writeln!(f, "{}", u + 1)?;
        }
        writeln!(f, "map:")?;
        for (new, old) in &self.map {
            writeln!(f, "{} {}", new + 1, old + 1)?;
        }
        if let Some(sol) = &self.solution {
            writeln!(f, "solution:")?;
            for u in sol {
                writeln!(f, "{}", u + 1)?;
            }
        }
        Ok(())
    }
}

pub fn write_sidecar(sidecar: &Sidecar, writer: impl Write) -> io::Result<()> {
    let mut w = BufWriter::new(writer);
    write!(w, "{sidecar}")?;
    w.flush()
}

pub fn read_sidecar(reader: impl BufRead) -> Result<Sidecar, IoError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Fixed,
        Covered,
        Map,
        Solution,
    }
    let mut sc = Sidecar::default();
    let mut section = Section::None;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        section = match text {
            "fixed:" => Section::Fixed,
            "covered:" => Section::Covered,
            "map:" => Section::Map,
            "solution:" => {
                sc.solution.get_or_insert_with(Vec::new);
                Section::Solution
            }
            _ => {
                let id = |tok: &str| -> Result<Node, IoError> {
                    match tok.parse::<u64>() {
                        Ok(v) if v >= 1 && v <= Node::MAX as u64 => Ok((v - 1) as Node),
                        _ => Err(parse_err(
                            lineno,
                            format!("`{tok}` is not a 1-based vertex id"),
                        )),
                    }
                };
                let toks: Vec<&str> = text.split_whitespace().collect();
                match (&section, toks.as_slice()) {
                    (Section::Fixed, [a]) => sc.fixed.push(id(a)?),
                    (Section::Covered, [a]) => sc.covered.push(id(a)?),
                    (Section::Solution, [a]) => sc.solution.as_mut().unwrap().push(id(a)?),
                    (Section::Map, [a, b]) => sc.map.push((id(a)?, id(b)?)),
                    (Section::None, _) => {
                        return Err(parse_err(lineno, "data before any section header"))
                    }
                    _ => return Err(parse_err(lineno, format!("unexpected line `{text}`"))),
                }
                continue;
            }
        };
    }
    Ok(sc)
}

pub const REPORT_HEADER: [&str; 10] = [
    "instance",
    "n",
    "m",
    "variant",
    "rounds",
    "fixed",
    "removed_nodes",
    "removed_edges",
    "time_build_ms",
    "time_reduce_ms",
];

/// Status of a timed measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Timing {
    Ms(f64),
    Timeout,
    Error,
}

impl fmt::Display for Timing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Timing::Ms(ms) => write!(f, "{ms:.3}"),
            Timing::Timeout => f.write_str("timeout"),
            Timing::Error => f.write_str("error"),
        }
    }
}

/// One CSV row. Count fields are empty when the run did not finish.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub instance: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub variant: String,
    pub rounds: Option<usize>,
    pub fixed: Option<usize>,
    pub removed_nodes: Option<usize>,
    pub removed_edges: Option<usize>,
    pub time_build: Timing,
    pub time_reduce: Timing,
}

impl ReportRow {
    pub fn finished(
        instance: &str,
        g: &Graph,
        variant: &str,
        report: &crate::reducer::ReductionReport,
        build_ms: f64,
        reduce_ms: f64,
    ) -> Self {
        Self {
            instance: instance.to_string(),
            n: Some(g.len()),
            m: Some(g.num_edges()),
            variant: variant.to_string(),
            rounds: Some(report.rounds),
            fixed: Some(report.fixed.len()),
            removed_nodes: Some(report.removed.len()),
            removed_edges: Some(report.removed_edges),
            time_build: Timing::Ms(build_ms),
            time_reduce: Timing::Ms(reduce_ms),
        }
    }

    pub fn failed(
        instance: &str,
        size: Option<(usize, usize)>,
        variant: &str,
        status: Timing,
    ) -> Self {
        Self {
            instance: instance.to_string(),
            n: size.map(|s| s.0),
            m: size.map(|s| s.1),
            variant: variant.to_string(),
            rounds: None,
            fixed: None,
            removed_nodes: None,
            removed_edges: None,
            time_build: if status == Timing::Error {
                Timing::Error
            } else {
                Timing::Ms(0.0)
            },
            time_reduce: status,
        }
    }

    fn record(&self) -> [String; 10] {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.instance.clone(),
            opt(self.n),
            opt(self.m),
            self.variant.clone(),
            opt(self.rounds),
            opt(self.fixed),
            opt(self.removed_nodes),
            opt(self.removed_edges),
            self.time_build.to_string(),
            self.time_reduce.to_string(),
        ]
    }
}

pub fn write_report_csv(rows: &[ReportRow], writer: impl Write) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(REPORT_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{barbell_cycle, fig3, path};

    fn gr(s: &str) -> Result<Graph, IoError> {
        read_gr(s.as_bytes())
    }

    fn line_of(e: IoError) -> usize {
        match e {
            IoError::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn reads_p3() {
        assert_eq!(gr("p ds 3 2\n1 2\n2 3\n").unwrap(), path(3));
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let g = gr("c hello\np ds 3 2\nc between\n  1   2 \n\n2\t3\nc end\n").unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn duplicates_and_loops_are_normalized() {
        let g = gr("p ds 3 4\n1 2\n2 1\n2 2\n2 3\n").unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(gr("1 2\n").unwrap_err()), 1);
        assert_eq!(line_of(gr("c x\n").unwrap_err()), 2);
        assert_eq!(line_of(gr("p ds 3 2\n1 2\n2 4\n").unwrap_err()), 3);
        assert_eq!(line_of(gr("p ds 3 2\n0 2\n").unwrap_err()), 2);
        assert_eq!(line_of(gr("p ds 3 3\n1 2\n2 3\n").unwrap_err()), 4);
        assert_eq!(line_of(gr("p ds 3\n").unwrap_err()), 1);
        assert_eq!(line_of(gr("p ds 3 1\n1 2\n2 3\n").unwrap_err()), 3);
        assert_eq!(line_of(gr("p ds 3 1\n1 x\n").unwrap_err()), 2);
    }

    #[test]
    fn round_trip() {
        for g in [
            path(7),
            fig3(),
            barbell_cycle(),
            Graph::from_edges(4, []).unwrap(),
        ] {
            let mut buf = Vec::new();
            write_gr(&g, &mut buf).unwrap();
            let h = read_gr(buf.as_slice()).unwrap();
            assert_eq!(g, h);
            let mut again = Vec::new();
            write_gr(&h, &mut again).unwrap();
            assert_eq!(buf, again);
        }
    }

    #[test]
    fn edge_list_is_zero_based() {
        let raw = parse_edge_list("# c\n0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(raw.build().unwrap(), path(3));
        assert_eq!(Format::from_path(Path::new("a/b.el")), Format::EdgeList);
        assert_eq!(Format::from_path(Path::new("a/b.gr")), Format::Gr);
    }

    #[test]
    fn sidecar_round_trip() {
        let sc = Sidecar {
            fixed: vec![1, 4],
            covered: vec![2],
            map: vec![(0, 2), (1, 3)],
            solution: Some(vec![1]),
        };
        let text = sc.to_string();
        assert!(text.starts_with("fixed:\n2\n5\ncovered:\n3\nmap:\n1 3\n2 4\nsolution:\n2\n"));
        let back = read_sidecar(text.as_bytes()).unwrap();
        assert_eq!(back, sc);
        assert_eq!(back.lifted_solution().unwrap(), vec![3]);
        let bare = Sidecar {
            solution: None,
            ..sc
        };
        assert_eq!(read_sidecar(bare.to_string().as_bytes()).unwrap(), bare);
        assert!(read_sidecar("3\n".as_bytes()).is_err());
        assert!(read_sidecar("map:\n3\n".as_bytes()).is_err());
    }

    #[test]
    fn csv_has_constant_width() {
        let g = path(6);
        let red = crate::reduce(&g, &crate::ReduceOptions::new(crate::Variant::Linear)).unwrap();
        let rows = vec![
            ReportRow::finished("p6.gr", &g, "linear", &red.report, 0.5, 1.25),
            ReportRow::failed("big.gr", Some((10, 20)), "naive", Timing::Timeout),
            ReportRow::failed("bad.gr", None, "naive", Timing::Error),
        ];
        let mut buf = Vec::new();
        write_report_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), REPORT_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "p6.gr,6,5,linear,1,2,4,5,0.500,1.250"
        );
        assert_eq!(
            lines.next().unwrap(),
            "big.gr,10,20,naive,,,,,0.000,timeout"
        );
        assert_eq!(lines.next().unwrap(), "bad.gr,,,naive,,,,,error,error");
    }
}
