//! Immutable graph and edge-labelled graph types.
//!
//! Vertices are `0..n` internally. Adjacency is one [`Bitset`] row per vertex,
//! so candidate filtering in the search is word-parallel.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::Bitset;

/// Hard cap on distinct labels, so a [`LabelSet`] fits in one word.
pub const MAX_LABELS: usize = 64;

/// Above this many vertices the label table is stored per row instead of as
/// a dense `n * n` matrix.
const DENSE_LABEL_LIMIT: usize = 4096;

const NO_LABEL: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge on vertex {vertex}")]
    Loop { vertex: usize },
    #[error("label count {0} outside 1..=64")]
    LabelCount(usize),
    #[error("label {label} on edge ({u}, {v}) is not below the label count {num_labels}")]
    LabelOutOfRange {
        u: usize,
        v: usize,
        label: usize,
        num_labels: usize,
    },
    #[error("label assigned to ({u}, {v}), which is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) has no label")]
    MissingLabel { u: usize, v: usize },
    #[error("edge ({u}, {v}) assigned conflicting labels {first} and {second}")]
    ConflictingLabel {
        u: usize,
        v: usize,
        first: usize,
        second: usize,
    },
    #[error("vertices {u} and {v} are not adjacent")]
    NotAClique { u: usize, v: usize },
}

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Bitset>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph from vertex pairs. Duplicate pairs collapse to one edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Bitset::new(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { vertex: u });
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph::from_rows(adjacency))
    }

    fn from_rows(adjacency: Vec<Bitset>) -> Self {
        let degrees = adjacency.iter().map(Bitset::count).collect();
        Graph {
            n: adjacency.len(),
            adjacency,
            degrees,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of (unique) edges.
    pub fn m(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &Bitset {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacency[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Every vertex as a bitset.
    pub fn vertex_set(&self) -> Bitset {
        Bitset::full(self.n)
    }

    /// True iff the vertices are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        self.non_adjacent_pair(vertices).is_none()
    }

    /// First pair (in input order) that is not an edge, if any. Repeated
    /// vertices count as a non-adjacent pair.
    pub fn non_adjacent_pair(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if !self.adjacent(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m())
            .finish()
    }
}

/// A set of label indices, at most [`MAX_LABELS`] of them.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    #[inline]
    pub fn from_bits(bits: u64) -> Self {
        LabelSet(bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// Number of distinct labels.
    #[inline]
    pub fn cost(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn with(self, label: u8) -> Self {
        LabelSet(self.0 | 1u64 << label)
    }

    #[inline]
    pub fn union(self, other: LabelSet) -> Self {
        LabelSet(self.0 | other.0)
    }

    #[inline]
    pub fn contains(self, label: u8) -> bool {
        label < 64 && self.0 & (1u64 << label) != 0
    }

    pub fn is_superset(self, other: LabelSet) -> bool {
        other.0 & !self.0 == 0
    }

    /// Label indices, ascending.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        (0..64u8).filter(move |&l| self.contains(l))
    }
}

impl FromIterator<u8> for LabelSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        iter.into_iter().fold(LabelSet::EMPTY, LabelSet::with)
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq)]
enum LabelTable {
    Dense { n: usize, labels: Vec<u8> },
    Rows(Vec<Vec<(u32, u8)>>),
}

impl LabelTable {
    fn build(g: &Graph, label_of: impl Fn(usize, usize) -> u8) -> Self {
        let n = g.n();
        if n <= DENSE_LABEL_LIMIT {
            let mut labels = vec![NO_LABEL; n * n];
            for (u, v) in g.edges() {
                let l = label_of(u, v);
                labels[u * n + v] = l;
                labels[v * n + u] = l;
            }
            LabelTable::Dense { n, labels }
        } else {
            let rows = (0..n)
                .map(|u| {
                    g.neighbours(u)
                        .iter()
                        .map(|v| (v as u32, label_of(u.min(v), u.max(v))))
                        .collect()
                })
                .collect();
            LabelTable::Rows(rows)
        }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> u8 {
        match self {
            LabelTable::Dense { n, labels } => labels[u * n + v],
            LabelTable::Rows(rows) => {
                let row = &rows[u];
                match row.binary_search_by_key(&(v as u32), |&(w, _)| w) {
                    Ok(k) => row[k].1,
                    Err(_) => NO_LABEL,
                }
            }
        }
    }
}

/// A graph with exactly one label on every edge.
#[derive(Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    graph: Graph,
    num_labels: usize,
    labels: LabelTable,
}

impl LabelledGraph {
    /// Attaches labels to every edge of `graph`. Assignments are `(u, v,
    /// label)` with either endpoint order; repeats must agree.
    pub fn new<I>(graph: Graph, num_labels: usize, assignments: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        if num_labels == 0 || num_labels > MAX_LABELS {
            return Err(GraphError::LabelCount(num_labels));
        }
        let n = graph.n();
        let mut assigned: HashMap<(usize, usize), usize> = HashMap::new();
        for (u, v, label) in assignments {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            let key = (u.min(v), u.max(v));
            if u == v || !graph.adjacent(u, v) {
                return Err(GraphError::NotAnEdge { u: key.0, v: key.1 });
            }
            if label >= num_labels {
                return Err(GraphError::LabelOutOfRange {
                    u: key.0,
                    v: key.1,
                    label,
                    num_labels,
                });
            }
            if let Some(&first) = assigned.get(&key) {
                if first != label {
                    return Err(GraphError::ConflictingLabel {
                        u: key.0,
                        v: key.1,
                        first,
                        second: label,
                    });
                }
            }
            assigned.insert(key, label);
        }
        if let Some((u, v)) = graph.edges().find(|e| !assigned.contains_key(e)) {
            return Err(GraphError::MissingLabel { u, v });
        }
        let labels = LabelTable::build(&graph, |u, v| assigned[&(u, v)] as u8);
        Ok(LabelledGraph {
            graph,
            num_labels,
            labels,
        })
    }

    /// Builds from a labelling function over canonical `(u, v)`, `u < v`.
    /// Labels are trusted to be below `num_labels`.
    pub(crate) fn from_fn(graph: Graph, num_labels: usize, label_of: impl Fn(usize, usize) -> u8) -> Self {
        debug_assert!((1..=MAX_LABELS).contains(&num_labels));
        let labels = LabelTable::build(&graph, label_of);
        LabelledGraph {
            graph,
            num_labels,
            labels,
        }
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    /// Label on edge `{u, v}`, or `None` when not adjacent.
    #[inline]
    pub fn label(&self, u: usize, v: usize) -> Option<u8> {
        match self.labels.get(u, v) {
            NO_LABEL => None,
            l => Some(l),
        }
    }

    /// `(u, v, label)` for every edge, `u < v`, ascending.
    pub fn labelled_edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.graph
            .edges()
            .map(move |(u, v)| (u, v, self.labels.get(u, v)))
    }

    /// `labels` plus the labels on every edge from `v` into `clique`.
    /// `v` must be adjacent to all of `clique`.
    #[inline]
    pub fn labels_with_clique(&self, v: usize, clique: &[usize], labels: LabelSet) -> LabelSet {
        let mut bits = labels.bits();
        for &w in clique {
            let l = self.labels.get(v, w);
            debug_assert_ne!(l, NO_LABEL, "{v} and {w} are not adjacent");
            bits |= 1u64 << (l & 63);
        }
        LabelSet::from_bits(bits)
    }

    /// Union of the labels over all pairs of `clique`, with its size.
    pub fn clique_cost(&self, clique: &[usize]) -> Result<(LabelSet, u32), GraphError> {
        if let Some(&v) = clique.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let mut labels = LabelSet::EMPTY;
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                match self.label(u, v) {
                    Some(l) => labels = labels.with(l),
                    None => return Err(GraphError::NotAClique { u, v }),
                }
            }
        }
        Ok((labels, labels.cost()))
    }

    /// Renumbers vertices so that degrees are non-increasing. Ties keep the
    /// original relative order.
    pub fn permute_by_degree(&self) -> (LabelledGraph, Permutation) {
        let mut forward: Vec<usize> = (0..self.n()).collect();
        forward.sort_by_key(|&v| std::cmp::Reverse(self.graph.degree(v)));
        let perm = Permutation::from_forward(forward);
        (self.permuted(&perm), perm)
    }

    /// The graph with new vertex `i` being old vertex `perm.forward()[i]`.
    pub fn permuted(&self, perm: &Permutation) -> LabelledGraph {
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                Bitset::from_indices(
                    n,
                    self.graph
                        .neighbours(perm.to_original(i))
                        .iter()
                        .map(|w| perm.to_permuted(w)),
                )
            })
            .collect();
        let graph = Graph::from_rows(rows);
        let labels = LabelTable::build(&graph, |u, v| {
            self.labels.get(perm.to_original(u), perm.to_original(v))
        });
        LabelledGraph {
            graph,
            num_labels: self.num_labels,
            labels,
        }
    }
}

impl fmt::Debug for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabelledGraph")
            .field("n", &self.n())
            .field("m", &self.graph.m())
            .field("num_labels", &self.num_labels)
            .finish()
    }
}

/// Vertex renumbering: `forward[new] = old`, `inverse[old] = new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// Panics if `forward` is not a bijection on `0..len`.
    pub fn from_forward(forward: Vec<usize>) -> Self {
        let mut inverse = vec![usize::MAX; forward.len()];
        for (new, &old) in forward.iter().enumerate() {
            assert!(old < forward.len() && inverse[old] == usize::MAX, "not a permutation");
            inverse[old] = new;
        }
        Permutation { forward, inverse }
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    #[inline]
    pub fn to_original(&self, permuted: usize) -> usize {
        self.forward[permuted]
    }

    #[inline]
    pub fn to_permuted(&self, original: usize) -> usize {
        self.inverse[original]
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &v)| i == v)
    }
}
