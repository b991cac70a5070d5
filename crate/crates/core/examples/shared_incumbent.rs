//! The shared best-so-far: a (size, cost) pair packed into one word so that
//! a larger key always means a better solution, improved by racing threads.
//!
//! cargo run --example shared_incumbent

use std::thread;

use labelled_clique::graph::LabelSet;
use labelled_clique::solver::{par::split_root, SharedIncumbent};
use labelled_clique::{fixtures, incumbent_key, is_better};

fn main() {
    for (a, b) in [((4, 2), (4, 3)), ((5, 9), (4, 0)), ((3, 1), (3, 1))] {
        println!(
            "{a:?} vs {b:?}: better {}, key {:#x} vs {:#x}",
            is_better(a, b),
            incumbent_key(a.0, a.1),
            incumbent_key(b.0, b.1)
        );
    }

    let best = SharedIncumbent::default();
    thread::scope(|s| {
        for t in 0..4usize {
            let best = &best;
            s.spawn(move || {
                for size in 1..=20 {
                    let clique: Vec<usize> = (0..size).collect();
                    let cost = ((size + t) % 5) as u8 + 1;
                    let labels: LabelSet = (0..cost).collect();
                    best.try_improve(&clique, labels);
                }
            });
        }
    });
    let (clique, labels) = best.snapshot();
    println!("after the race: size {} cost {} (value {:?})", clique.len(), labels.cost(), best.value());

    let (g, _) = fixtures::seven().permute_by_degree();
    let roots = split_root(&g);
    println!("the seven-vertex instance splits into {} root subproblems:", roots.len());
    for job in &roots {
        println!("  branch on {} with {} candidates, bound {}", job.root, job.candidates.count(), job.bound);
    }
}
