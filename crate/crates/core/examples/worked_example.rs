//! Solves the seven-vertex, four-label instance in `fixtures/` at every
//! budget and checks each answer against exhaustive search.
//!
//! cargo run --example worked_example

use labelled_clique::{fixtures, oracle_solve, solve};

fn main() {
    let g = fixtures::seven();
    println!("{} vertices, {} edges, {} labels", g.n(), g.graph().m(), g.num_labels());
    for budget in 1..=g.num_labels() as u32 {
        let s = solve(&g, budget).expect("positive budget");
        let o = oracle_solve(&g, budget).expect("small graph");
        assert_eq!((s.size, s.cost), (o.size, o.cost));
        let witness: Vec<usize> = s.clique.iter().map(|v| v + 1).collect();
        let labels: Vec<u8> = s.labels.iter().map(|l| l + 1).collect();
        println!(
            "budget {budget}: clique {witness:?} size {} labels {labels:?} \
             (pass one found size {} at cost {}; nodes {} + {})",
            s.size, s.stats.pass1_size, s.stats.pass1_cost, s.stats.nodes_pass1, s.stats.nodes_pass2
        );
    }
}
