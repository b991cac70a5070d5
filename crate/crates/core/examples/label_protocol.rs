//! Random-label benchmarking: for each label count and budget percentage,
//! averages solution size, cost and time over seeded labellings.
//!
//! cargo run --release --example label_protocol -- [samples] [graph.clq]
//!
//! Without a file, a random graph with 171 vertices and 9435 edges is used.

use std::time::Instant;

use labelled_clique::io::{self, BudgetSpec};
use labelled_clique::{generate, solve};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples: u64 = args.next().map_or(10, |a| a.parse().expect("sample count"));
    let graph = match args.next() {
        Some(path) => io::load_dimacs(path.as_ref()).expect("readable DIMACS file").graph,
        None => generate::random_graph_with_edges(171, 9435, 4),
    };

    println!("labels  pct  budget  size   cost   seconds");
    for k in [4, 8] {
        for pct in [25, 50, 75] {
            let budget = io::resolve_budget(BudgetSpec::Percent(pct), k).expect("valid percentage");
            let (mut size, mut cost, mut secs) = (0.0, 0.0, 0.0);
            for seed in 0..samples {
                let lg = io::random_labels(&graph, k, seed).expect("label count");
                let t = Instant::now();
                let s = solve(&lg, budget).expect("positive budget");
                secs += t.elapsed().as_secs_f64();
                size += s.size as f64;
                cost += f64::from(s.cost);
            }
            let m = samples as f64;
            println!("{k:>6}  {pct:>3}  {budget:>6}  {:>5.2}  {:>5.2}  {:.4}", size / m, cost / m, secs / m);
        }
    }
}
