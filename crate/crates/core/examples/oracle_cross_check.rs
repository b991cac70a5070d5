//! Compares the branch and bound with exhaustive enumeration on many small
//! seeded instances and reports the first disagreement, if any.
//!
//! cargo run --release --example oracle_cross_check -- [instances]

use labelled_clique::{generate, io, oracle_solve, solve};

fn main() {
    let count: u64 = std::env::args().nth(1).map_or(300, |a| a.parse().expect("instance count"));
    let mut compared = 0;
    for seed in 0..count {
        let n = 5 + (seed % 16) as usize;
        let k = 1 + (seed % 6) as usize;
        let density = [0.3, 0.5, 0.7, 0.9][(seed % 4) as usize];
        let g = io::random_labels(&generate::random_graph(n, density, seed), k, seed).expect("label count");
        for budget in 1..=k as u32 {
            let s = solve(&g, budget).expect("positive budget");
            let o = oracle_solve(&g, budget).expect("small graph");
            if (s.size, s.cost) != (o.size, o.cost) {
                eprintln!(
                    "seed {seed} (n={n}, K={k}, d={density}) budget {budget}: solver ({}, {}) oracle ({}, {}) witness {:?}",
                    s.size, s.cost, o.size, o.cost, o.witness
                );
                std::process::exit(1);
            }
            compared += 1;
        }
    }
    println!("{compared} (instance, budget) pairs agree");
}
