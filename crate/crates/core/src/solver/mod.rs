//! Two-pass branch and bound for the maximum labelled clique problem.
//!
//! Pass one maximises clique size subject to the label budget. Pass two
//! keeps the pass-one incumbent, admits equal-size branches, and filters
//! labels against one less than the incumbent cost, so it can only find
//! cheaper cliques of the same size.

use serde::Serialize;

use crate::bitset::Bitset;
use crate::colouring::ColourScratch;
use crate::graph::{LabelSet, LabelledGraph, Permutation};

pub mod par;
pub mod seq;

pub use par::{incumbent_key, solve_parallel, SharedIncumbent, Subproblem};
pub use seq::solve;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("budget must be at least 1")]
    InvalidBudget,
    #[error("worker count must be at least 1")]
    InvalidWorkers,
}

/// True iff `candidate` beats `best`: larger, or equal size and cheaper.
/// Pairs are `(size, cost)`.
#[inline]
pub fn is_better(candidate: (usize, u32), best: (usize, u32)) -> bool {
    candidate.0 > best.0 || (candidate.0 == best.0 && candidate.1 < best.1)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SearchStats {
    /// Calls to `expand` in the size-maximising pass.
    pub nodes_pass1: u64,
    /// Calls to `expand` in the cost-minimising pass; zero when skipped.
    pub nodes_pass2: u64,
    /// Size and cost held after pass one.
    pub pass1_size: usize,
    pub pass1_cost: u32,
    /// Wall time in seconds, including the degree permutation.
    pub elapsed: f64,
    pub workers: usize,
    /// Depth-one subproblems resplit by idle workers.
    pub steals: u64,
}

/// A best feasible clique, in the caller's vertex numbering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    /// Ascending, 0-based.
    pub clique: Vec<usize>,
    pub size: usize,
    pub labels: LabelSet,
    pub cost: u32,
    pub stats: SearchStats,
}

impl Solution {
    pub(crate) fn unpermute(clique: &[usize], labels: LabelSet, perm: &Permutation, stats: SearchStats) -> Self {
        let mut original: Vec<usize> = clique.iter().map(|&v| perm.to_original(v)).collect();
        original.sort_unstable();
        Solution {
            size: original.len(),
            clique: original,
            labels,
            cost: labels.cost(),
            stats,
        }
    }
}

/// Pass two cannot improve when the incumbent is already as cheap as a
/// clique of its size can be.
pub(crate) fn second_pass_is_redundant(size: usize, cost: u32) -> bool {
    size <= 1 || cost <= 1
}

/// What the search needs to know about the best solution so far.
pub(crate) trait IncumbentView {
    fn size(&self) -> usize;
    fn cost(&self) -> u32;
    fn offer(&mut self, clique: &[usize], labels: LabelSet);
}

#[derive(Debug, Clone, Default)]
pub(crate) struct LocalIncumbent {
    pub clique: Vec<usize>,
    pub labels: LabelSet,
}

impl IncumbentView for LocalIncumbent {
    #[inline]
    fn size(&self) -> usize {
        self.clique.len()
    }

    #[inline]
    fn cost(&self) -> u32 {
        self.labels.cost()
    }

    fn offer(&mut self, clique: &[usize], labels: LabelSet) {
        if is_better((clique.len(), labels.cost()), (self.size(), self.cost())) {
            self.clique.clear();
            self.clique.extend_from_slice(clique);
            self.labels = labels;
        }
    }
}

/// Per-depth scratch: candidates, their colour order and bounds.
#[derive(Debug, Clone, Default)]
pub(crate) struct Frame {
    pub candidates: Bitset,
    pub order: Vec<usize>,
    pub bounds: Vec<u32>,
    scratch: ColourScratch,
}

impl Frame {
    fn new(n: usize) -> Self {
        Frame {
            candidates: Bitset::new(n),
            order: Vec::with_capacity(n),
            bounds: Vec::with_capacity(n),
            scratch: ColourScratch::new(n),
        }
    }

    pub fn colour(&mut self, graph: &LabelledGraph) {
        self.scratch
            .colour(graph.graph(), &self.candidates, &mut self.order, &mut self.bounds);
    }
}

/// Recursive search state for one pass, generic over where the incumbent
/// lives. `clique` is a stack in permuted numbering.
pub(crate) struct Expander<'g, I> {
    pub graph: &'g LabelledGraph,
    pub budget: u32,
    pub first: bool,
    pub clique: Vec<usize>,
    pub frames: Vec<Frame>,
    pub nodes: u64,
    pub incumbent: I,
    /// Off only when tracing the full tree shape in tests.
    pub prune: bool,
    /// When set, records every clique of size one or two that passes the
    /// label filter.
    pub trace: Option<Vec<Vec<usize>>>,
}

impl<'g, I: IncumbentView> Expander<'g, I> {
    pub fn new(graph: &'g LabelledGraph, budget: u32, first: bool, incumbent: I) -> Self {
        Expander {
            graph,
            budget,
            first,
            clique: Vec::with_capacity(graph.n()),
            frames: Vec::new(),
            nodes: 0,
            incumbent,
            prune: true,
            trace: None,
        }
    }

    pub fn frame(&mut self, depth: usize) -> &mut Frame {
        while self.frames.len() <= depth {
            self.frames.push(Frame::new(self.graph.n()));
        }
        &mut self.frames[depth]
    }

    /// Whether a branch with colour bound `bound` at the current clique can
    /// still beat the incumbent.
    #[inline]
    pub fn pruned(&self, bound: u32) -> bool {
        if !self.prune {
            return false;
        }
        let reach = self.clique.len() + bound as usize;
        let best = self.incumbent.size();
        reach < best || (self.first && reach == best)
    }

    /// Largest label count a growing clique may carry, or `None` if nothing
    /// passes.
    #[inline]
    pub fn label_limit(&self) -> Option<u32> {
        if self.first {
            Some(self.budget)
        } else {
            self.incumbent.cost().checked_sub(1)
        }
    }

    /// Label filter for the current clique carrying `labels`.
    #[inline]
    pub fn admits(&mut self, labels: LabelSet) -> bool {
        let ok = self.label_limit().is_some_and(|limit| labels.cost() <= limit);
        if ok && self.clique.len() <= 2 {
            if let Some(trace) = &mut self.trace {
                trace.push(self.clique.clone());
            }
        }
        ok
    }

    /// Includes `v` on top of the current clique (whose labels are
    /// `labels`), with `candidates` the candidate set `v` was chosen from.
    /// Leaves the clique as it found it.
    pub fn branch(&mut self, v: usize, labels: LabelSet, candidates: &Bitset, depth: usize) {
        let extended = self.graph.labels_with_clique(v, &self.clique, labels);
        self.clique.push(v);
        if self.admits(extended) {
            self.incumbent.offer(&self.clique, extended);
            let graph = self.graph;
            let next = self.frame(depth + 1);
            next.candidates
                .assign_intersection(candidates, graph.graph().neighbours(v));
            if !next.candidates.is_empty() {
                self.expand(depth + 1, extended);
            }
        }
        self.clique.pop();
    }

    /// Searches `frames[depth].candidates` below the current clique.
    pub fn expand(&mut self, depth: usize, labels: LabelSet) {
        self.nodes += 1;
        let mut frame = std::mem::take(self.frame(depth));
        frame.colour(self.graph);
        for i in (0..frame.order.len()).rev() {
            if self.pruned(frame.bounds[i]) {
                break;
            }
            let v = frame.order[i];
            self.branch(v, labels, &frame.candidates, depth);
            frame.candidates.remove(v);
        }
        self.frames[depth] = frame;
    }
}
