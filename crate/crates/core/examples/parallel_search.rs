//! Sequential and threaded search on the same random instance.
//!
//! cargo run --release --example parallel_search -- [workers] [n] [density]

use std::time::Instant;

use labelled_clique::{generate, io, solve, solve_parallel};

fn main() {
    let mut args = std::env::args().skip(1);
    let workers: usize = args.next().map_or(4, |a| a.parse().expect("worker count"));
    let n: usize = args.next().map_or(150, |a| a.parse().expect("vertex count"));
    let density: f64 = args.next().map_or(0.7, |a| a.parse().expect("density"));

    let g = generate::random_graph(n, density, 11);
    let lg = io::random_labels(&g, 8, 11).expect("eight labels");
    println!("G({n}, {density}): {} edges, 8 labels", g.m());
    for budget in [2, 4, 6] {
        let t = Instant::now();
        let s = solve(&lg, budget).expect("positive budget");
        let t_seq = t.elapsed();
        let t = Instant::now();
        let p = solve_parallel(&lg, budget, workers).expect("positive budget and workers");
        let t_par = t.elapsed();
        assert_eq!((s.size, s.cost), (p.size, p.cost));
        println!(
            "budget {budget}: size {} cost {} | sequential {t_seq:.2?} ({} nodes) | {workers} workers {t_par:.2?} ({} nodes, {} steals)",
            s.size,
            s.cost,
            s.stats.nodes_pass1 + s.stats.nodes_pass2,
            p.stats.nodes_pass1 + p.stats.nodes_pass2,
            p.stats.steals
        );
    }
}
