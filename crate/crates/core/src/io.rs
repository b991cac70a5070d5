//! DIMACS graphs, label files, seeded random labels and budget resolution.
//!
//! Both text formats are 1-based. A label file has one `l u v k` line per
//! edge, with `k` in `1..=64`, and may contain `c` comment lines.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::graph::{Graph, GraphError, LabelledGraph, MAX_LABELS};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("no `p edge` header")]
    MissingHeader,
    #[error("second `p` header")]
    DuplicateHeader,
    #[error("edge line before the `p` header")]
    EdgeBeforeHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge on vertex {0}")]
    Loop(usize),
    #[error("label {0} must be at least 1")]
    LabelZero(usize),
    #[error("label {label} exceeds the maximum of {max}")]
    TooManyLabels { label: usize, max: usize },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("edge ({0}, {1}) has no label")]
    MissingLabel(usize, usize),
    #[error("edge ({u}, {v}) labelled both {first} and {second}")]
    ConflictingLabel {
        u: usize,
        v: usize,
        first: usize,
        second: usize,
    },
}

/// A parse failure, with the 1-based line it occurred on when there is one.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl ParseError {
    fn at(line: usize, kind: ParseErrorKind) -> Self {
        ParseError {
            line: Some(line),
            kind,
        }
    }
}

fn fields<'a, const N: usize>(
    line_no: usize,
    line: &str,
    rest: impl Iterator<Item = &'a str>,
) -> Result<[usize; N], ParseError> {
    let malformed = || ParseError::at(line_no, ParseErrorKind::Malformed(line.trim().to_string()));
    let mut out = [0; N];
    let mut rest = rest;
    for slot in out.iter_mut() {
        *slot = rest
            .next()
            .ok_or_else(malformed)?
            .parse()
            .map_err(|_| malformed())?;
    }
    if rest.next().is_some() {
        return Err(malformed());
    }
    Ok(out)
}

fn vertex(line_no: usize, v: usize, n: usize) -> Result<usize, ParseError> {
    if v == 0 || v > n {
        Err(ParseError::at(line_no, ParseErrorKind::VertexOutOfRange { vertex: v, n }))
    } else {
        Ok(v - 1)
    }
}

/// A parsed DIMACS graph and any non-fatal issues found on the way.
#[derive(Debug, Clone)]
pub struct DimacsGraph {
    pub graph: Graph,
    /// Edge count claimed by the header.
    pub declared_edges: usize,
    pub warnings: Vec<String>,
}

/// Parses DIMACS clique format (`c`, `p edge n m`, `e u v`). Duplicate edges
/// are collapsed; a header edge count that disagrees with the unique edge
/// count is only a warning.
pub fn parse_dimacs_reporting(text: &str) -> Result<DimacsGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut words = line.split_whitespace();
        match words.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::at(line_no, ParseErrorKind::DuplicateHeader));
                }
                match words.next() {
                    Some("edge") | Some("col") => {}
                    _ => {
                        return Err(ParseError::at(
                            line_no,
                            ParseErrorKind::Malformed(line.trim().to_string()),
                        ))
                    }
                }
                let [n, m] = fields::<2>(line_no, line, words)?;
                header = Some((n, m));
                edges.reserve(m);
            }
            Some("e") => {
                let (n, _) = header.ok_or(ParseError::at(line_no, ParseErrorKind::EdgeBeforeHeader))?;
                let [u, v] = fields::<2>(line_no, line, words)?;
                let (u, v) = (vertex(line_no, u, n)?, vertex(line_no, v, n)?);
                if u == v {
                    return Err(ParseError::at(line_no, ParseErrorKind::Loop(u + 1)));
                }
                edges.push((u, v));
                edge_lines += 1;
            }
            Some(_) if line.starts_with('c') => {}
            Some(_) => {
                return Err(ParseError::at(
                    line_no,
                    ParseErrorKind::Malformed(line.trim().to_string()),
                ))
            }
        }
    }
    let (n, declared) = header.ok_or(ParseError {
        line: None,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let graph = Graph::new(n, edges).expect("edges validated while parsing");
    let mut warnings = Vec::new();
    if graph.m() != edge_lines {
        warnings.push(format!(
            "{} duplicate edge line(s) collapsed",
            edge_lines - graph.m()
        ));
    }
    if graph.m() != declared {
        warnings.push(format!(
            "header declares {declared} edges, found {} unique",
            graph.m()
        ));
    }
    Ok(DimacsGraph {
        graph,
        declared_edges: declared,
        warnings,
    })
}

/// [`parse_dimacs_reporting`], logging warnings.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let parsed = parse_dimacs_reporting(text)?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    Ok(parsed.graph)
}

/// DIMACS text for `g`, edges ascending.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses a label file against `g`. The label count is the largest label
/// seen (at least 1).
pub fn parse_labels(text: &str, g: &Graph) -> Result<LabelledGraph, ParseError> {
    let n = g.n();
    let mut assignments = Vec::with_capacity(g.m());
    let mut max_label = 1;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut words = line.split_whitespace();
        match words.next() {
            None | Some("c") => {}
            Some("l") => {
                let [u, v, k] = fields::<3>(line_no, line, words)?;
                let (u0, v0) = (vertex(line_no, u, n)?, vertex(line_no, v, n)?);
                if u0 == v0 || !g.adjacent(u0, v0) {
                    return Err(ParseError::at(line_no, ParseErrorKind::NotAnEdge(u, v)));
                }
                if k == 0 {
                    return Err(ParseError::at(line_no, ParseErrorKind::LabelZero(k)));
                }
                if k > MAX_LABELS {
                    return Err(ParseError::at(
                        line_no,
                        ParseErrorKind::TooManyLabels { label: k, max: MAX_LABELS },
                    ));
                }
                max_label = max_label.max(k);
                assignments.push((u0, v0, k - 1));
            }
            Some(_) => {
                return Err(ParseError::at(
                    line_no,
                    ParseErrorKind::Malformed(line.trim().to_string()),
                ))
            }
        }
    }
    LabelledGraph::new(g.clone(), max_label, assignments).map_err(|e| {
        let kind = match e {
            GraphError::MissingLabel { u, v } => ParseErrorKind::MissingLabel(u + 1, v + 1),
            GraphError::ConflictingLabel { u, v, first, second } => ParseErrorKind::ConflictingLabel {
                u: u + 1,
                v: v + 1,
                first: first + 1,
                second: second + 1,
            },
            other => unreachable!("label lines validated while parsing: {other}"),
        };
        ParseError { line: None, kind }
    })
}

/// Label file text for `g`, edges ascending.
pub fn write_labels(g: &LabelledGraph) -> String {
    let mut out = String::new();
    for (u, v, l) in g.labelled_edges() {
        out.push_str(&format!("l {} {} {}\n", u + 1, v + 1, l + 1));
    }
    out
}

/// Labels every edge of `g` uniformly from `num_labels` labels: edges are
/// visited in ascending `(min, max)` order and each takes one SplitMix64
/// value modulo `num_labels`.
pub fn random_labels(g: &Graph, num_labels: usize, seed: u64) -> Result<LabelledGraph, GraphError> {
    if num_labels == 0 || num_labels > MAX_LABELS {
        return Err(GraphError::LabelCount(num_labels));
    }
    let mut rng = SplitMix64::new(seed);
    let mut labels = vec![0u8; g.m()];
    for slot in labels.iter_mut() {
        *slot = rng.below(num_labels as u64) as u8;
    }
    // Edge rank in canonical order; `edges()` is ascending.
    let index: std::collections::HashMap<(usize, usize), u8> =
        g.edges().zip(labels).collect();
    Ok(LabelledGraph::from_fn(g.clone(), num_labels, |u, v| index[&(u, v)]))
}

/// How the label budget is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetSpec {
    Absolute(u32),
    /// Percentage of the label count.
    Percent(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BudgetError {
    #[error("budget must be at least 1")]
    Zero,
    #[error("budget percentage {0} outside 1..=100")]
    Percent(u32),
}

/// Resolves a budget. Percentages round half away from zero, with a floor
/// of 1: `25%` of 6 labels is 2.
pub fn resolve_budget(spec: BudgetSpec, num_labels: usize) -> Result<u32, BudgetError> {
    match spec {
        BudgetSpec::Absolute(0) => Err(BudgetError::Zero),
        BudgetSpec::Absolute(b) => Ok(b),
        BudgetSpec::Percent(p) if p == 0 || p > 100 => Err(BudgetError::Percent(p)),
        BudgetSpec::Percent(p) => {
            let scaled = u64::from(p) * num_labels as u64;
            let rounded = (2 * scaled + 100) / 200;
            Ok((rounded as u32).max(1))
        }
    }
}

/// Where edge labels come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSource {
    Random { num_labels: usize, seed: u64 },
    File(PathBuf),
}

/// Everything needed to set up one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub graph: PathBuf,
    pub labels: LabelSource,
    pub budget: BudgetSpec,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

/// A loaded instance ready to solve.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub graph: LabelledGraph,
    pub budget: u32,
    pub seed: Option<u64>,
    pub warnings: Vec<String>,
}

pub fn read_text(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and parses a DIMACS file.
pub fn load_dimacs(path: &Path) -> Result<DimacsGraph, LoadError> {
    parse_dimacs_reporting(&read_text(path)?).map_err(|source| LoadError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Attaches labels to an already-read graph.
pub fn attach_labels(graph: &Graph, source: &LabelSource) -> Result<LabelledGraph, LoadError> {
    match source {
        LabelSource::Random { num_labels, seed } => Ok(random_labels(graph, *num_labels, *seed)?),
        LabelSource::File(path) => parse_labels(&read_text(path)?, graph).map_err(|source| LoadError::Parse {
            path: path.clone(),
            source,
        }),
    }
}

impl InstanceSpec {
    pub fn load(&self) -> Result<Instance, LoadError> {
        let dimacs = load_dimacs(&self.graph)?;
        let graph = attach_labels(&dimacs.graph, &self.labels)?;
        let budget = resolve_budget(self.budget, graph.num_labels())?;
        let seed = match self.labels {
            LabelSource::Random { seed, .. } => Some(seed),
            LabelSource::File(_) => None,
        };
        Ok(Instance {
            name: instance_name(&self.graph),
            graph,
            budget,
            seed,
            warnings: dimacs.warnings,
        })
    }
}

/// File stem, or the whole path when there is none.
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
