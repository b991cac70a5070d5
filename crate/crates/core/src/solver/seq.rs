//! Dedicated single-threaded solver.

use std::time::Instant;

use super::{second_pass_is_redundant, Expander, LocalIncumbent, SearchStats, Solution, SolveError};
use crate::graph::{LabelSet, LabelledGraph};

/// Finds a largest clique using at most `budget` distinct labels and, among
/// those, one using the fewest labels.
pub fn solve(g: &LabelledGraph, budget: u32) -> Result<Solution, SolveError> {
    if budget < 1 {
        return Err(SolveError::InvalidBudget);
    }
    let start = Instant::now();
    let (permuted, perm) = g.permute_by_degree();
    let mut stats = SearchStats {
        workers: 1,
        ..SearchStats::default()
    };

    let (incumbent, nodes) = run_pass(&permuted, budget, true, LocalIncumbent::default());
    stats.nodes_pass1 = nodes;
    stats.pass1_size = incumbent.clique.len();
    stats.pass1_cost = incumbent.labels.cost();

    let incumbent = if second_pass_is_redundant(stats.pass1_size, stats.pass1_cost) {
        incumbent
    } else {
        let (incumbent, nodes) = run_pass(&permuted, budget, false, incumbent);
        stats.nodes_pass2 = nodes;
        incumbent
    };

    stats.elapsed = start.elapsed().as_secs_f64();
    Ok(Solution::unpermute(&incumbent.clique, incumbent.labels, &perm, stats))
}

/// One full pass from the root on an already permuted graph.
pub(crate) fn run_pass(
    permuted: &LabelledGraph,
    budget: u32,
    first: bool,
    incumbent: LocalIncumbent,
) -> (LocalIncumbent, u64) {
    let mut search = Expander::new(permuted, budget, first, incumbent);
    if permuted.n() > 0 {
        search.frame(0).candidates = permuted.graph().vertex_set();
        search.expand(0, LabelSet::EMPTY);
    }
    (search.incumbent, search.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Graph;

    #[test]
    fn seven_budgets() {
        let g = fixtures::seven();
        let s = solve(&g, 3).unwrap();
        assert_eq!((s.size, s.cost), (4, 2));
        assert_eq!(s.clique, vec![3, 4, 5, 6]);
        let s = solve(&g, 4).unwrap();
        assert_eq!((s.size, s.cost), (5, 4));
        let s = solve(&g, 2).unwrap();
        assert_eq!((s.size, s.cost), (4, 2));
    }

    #[test]
    fn empty_graph() {
        let g = LabelledGraph::new(Graph::new(0, []).unwrap(), 1, []).unwrap();
        let s = solve(&g, 5).unwrap();
        assert_eq!((s.size, s.cost), (0, 0));
        assert!(s.clique.is_empty());
    }

    #[test]
    fn edgeless_graph_gives_singleton() {
        let g = LabelledGraph::new(Graph::new(3, []).unwrap(), 2, []).unwrap();
        let s = solve(&g, 1).unwrap();
        assert_eq!((s.size, s.cost), (1, 0));
        assert_eq!(s.stats.nodes_pass2, 0);
    }

    #[test]
    fn zero_budget_rejected() {
        assert_eq!(solve(&fixtures::seven(), 0), Err(SolveError::InvalidBudget));
    }

    #[test]
    fn deterministic_node_counts() {
        let g = fixtures::seven();
        let a = solve(&g, 3).unwrap();
        let b = solve(&g, 3).unwrap();
        assert_eq!(a.clique, b.clique);
        assert_eq!(a.stats.nodes_pass1, b.stats.nodes_pass1);
        assert_eq!(a.stats.nodes_pass2, b.stats.nodes_pass2);
        assert!(a.stats.nodes_pass1 > 0);
    }
}
