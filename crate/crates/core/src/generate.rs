//! Seeded random graphs for tests, examples and benchmarking.

use crate::graph::Graph;
use crate::rng::SplitMix64;

/// G(n, p): each pair is an edge independently with probability `density`.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < density {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are in range")
}

/// G(n, m): exactly `m` distinct edges chosen uniformly. Panics if `m`
/// exceeds the number of pairs.
pub fn random_graph_with_edges(n: usize, m: usize, seed: u64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(m <= pairs, "{m} edges requested on {n} vertices");
    let mut rng = SplitMix64::new(seed);
    let mut chosen = std::collections::HashSet::with_capacity(m);
    if m * 2 > pairs {
        // Dense: choose the non-edges instead.
        let mut missing = std::collections::HashSet::new();
        while missing.len() < pairs - m {
            missing.insert(random_pair(&mut rng, n));
        }
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !missing.contains(e));
        return Graph::new(n, edges).expect("generated edges are in range");
    }
    while chosen.len() < m {
        chosen.insert(random_pair(&mut rng, n));
    }
    let mut edges: Vec<_> = chosen.into_iter().collect();
    edges.sort_unstable();
    Graph::new(n, edges).expect("generated edges are in range")
}

fn random_pair(rng: &mut SplitMix64, n: usize) -> (usize, usize) {
    loop {
        let u = rng.below(n as u64) as usize;
        let v = rng.below(n as u64) as usize;
        if u != v {
            return (u.min(v), u.max(v));
        }
    }
}

/// A sparse graph with a heavy-tailed degree sequence: each new vertex
/// attaches to `links` earlier vertices picked in proportion to degree,
/// then `extra` random chords are added. Roughly the shape of a
/// collaboration network.
pub fn preferential_attachment(n: usize, links: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = std::collections::HashSet::new();
    // Every endpoint of every edge, so sampling it is degree-proportional.
    let mut ends: Vec<usize> = Vec::new();
    for v in 1..n {
        for _ in 0..links.min(v) {
            let u = if ends.is_empty() || rng.below(4) == 0 {
                rng.below(v as u64) as usize
            } else {
                ends[rng.below(ends.len() as u64) as usize]
            };
            if u != v && edges.insert((u.min(v), u.max(v))) {
                ends.push(u);
                ends.push(v);
            }
        }
    }
    let mut added = 0;
    while added < extra && n > 1 {
        if edges.insert(random_pair(&mut rng, n)) {
            added += 1;
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Graph::new(n, edges).expect("generated edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_edge_counts() {
        assert_eq!(random_graph_with_edges(30, 100, 1).m(), 100);
        assert_eq!(random_graph_with_edges(30, 400, 1).m(), 400);
        assert_eq!(random_graph_with_edges(30, 435, 1).m(), 435);
    }

    #[test]
    fn seeded() {
        assert_eq!(random_graph(25, 0.3, 4), random_graph(25, 0.3, 4));
        assert_ne!(random_graph(25, 0.3, 4), random_graph(25, 0.3, 5));
        let g = preferential_attachment(500, 2, 50, 3);
        assert_eq!(g, preferential_attachment(500, 2, 50, 3));
        assert!(g.m() > 900);
    }
}
