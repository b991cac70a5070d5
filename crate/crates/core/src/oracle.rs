//! Exhaustive reference solver for small graphs.
//!
//! Shares nothing with the branch and bound beyond the graph type: no
//! bitsets, no colouring, no ordering. Among equally good cliques the
//! lexicographically smallest vertex list is returned.

use crate::graph::{LabelSet, LabelledGraph};
use crate::solver::is_better;

/// Largest graph the oracle accepts.
pub const ORACLE_LIMIT: usize = 25;
/// Largest graph enumerated subset by subset.
pub const SUBSET_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the exhaustive limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("budget must be at least 1")]
    InvalidBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub cost: u32,
    /// Ascending, 0-based.
    pub witness: Vec<usize>,
    pub labels: LabelSet,
}

impl OracleResult {
    fn empty() -> Self {
        OracleResult {
            size: 0,
            cost: 0,
            witness: Vec::new(),
            labels: LabelSet::EMPTY,
        }
    }

    fn consider(&mut self, witness: &[usize], labels: LabelSet) {
        let cand = (witness.len(), labels.cost());
        let best = (self.size, self.cost);
        if is_better(cand, best) || (cand == best && witness < self.witness.as_slice()) {
            self.size = witness.len();
            self.cost = labels.cost();
            self.witness = witness.to_vec();
            self.labels = labels;
        }
    }
}

fn check(g: &LabelledGraph, budget: u32, limit: usize) -> Result<(), OracleError> {
    if budget < 1 {
        return Err(OracleError::InvalidBudget);
    }
    if g.n() > limit {
        return Err(OracleError::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

/// Best feasible clique by exhaustive search. Uses subset enumeration up
/// to [`SUBSET_LIMIT`] vertices and clique extension beyond.
pub fn oracle_solve(g: &LabelledGraph, budget: u32) -> Result<OracleResult, OracleError> {
    if g.n() <= SUBSET_LIMIT {
        oracle_by_subsets(g, budget)
    } else {
        oracle_by_extension(g, budget)
    }
}

/// Tries every vertex subset.
pub fn oracle_by_subsets(g: &LabelledGraph, budget: u32) -> Result<OracleResult, OracleError> {
    check(g, budget, SUBSET_LIMIT)?;
    let n = g.n();
    let rows: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| g.label(u, v).is_some()).fold(0, |m, v| m | 1 << v))
        .collect();
    let mut best = OracleResult::empty();
    let mut members = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << n) {
        members.clear();
        members.extend((0..n).filter(|&v| mask & (1 << v) != 0));
        let clique = members
            .iter()
            .all(|&v| (mask & !(1 << v)) & !rows[v] == 0);
        if !clique {
            continue;
        }
        let mut labels = LabelSet::EMPTY;
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                labels = labels.with(g.label(u, v).expect("clique pair"));
            }
        }
        if labels.cost() <= budget {
            best.consider(&members, labels);
        }
    }
    Ok(best)
}

/// Enumerates every feasible clique by extending with larger vertices.
/// Label sets only grow along an extension, so infeasible cliques are not
/// extended.
pub fn oracle_by_extension(g: &LabelledGraph, budget: u32) -> Result<OracleResult, OracleError> {
    check(g, budget, ORACLE_LIMIT)?;
    let mut best = OracleResult::empty();
    let mut clique = Vec::with_capacity(g.n());
    extend(g, budget, 0, &mut clique, LabelSet::EMPTY, &mut best);
    Ok(best)
}

fn extend(
    g: &LabelledGraph,
    budget: u32,
    from: usize,
    clique: &mut Vec<usize>,
    labels: LabelSet,
    best: &mut OracleResult,
) {
    best.consider(clique, labels);
    for v in from..g.n() {
        let mut next = labels;
        let mut ok = true;
        for &u in clique.iter() {
            match g.label(u, v) {
                Some(l) => next = next.with(l),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && next.cost() <= budget {
            clique.push(v);
            extend(g, budget, v + 1, clique, next, best);
            clique.pop();
        }
    }
}
