//! Reads a DIMACS graph, labels it, writes and re-reads the label file,
//! solves, and verifies the witness the way `mlc verify` does.
//!
//! cargo run --example dimacs_files -- [graph.clq] [labels] [budget]

use std::fs;

use labelled_clique::cli::check_witness;
use labelled_clique::{fixtures, io, solve};

fn main() {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => fs::read_to_string(&path).expect("readable graph file"),
        None => fixtures::EIGHT_DIMACS.to_string(),
    };
    let k: usize = args.next().map_or(3, |a| a.parse().expect("label count"));
    let budget: u32 = args.next().map_or(2, |a| a.parse().expect("budget"));

    let parsed = io::parse_dimacs_reporting(&text).expect("valid DIMACS");
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let g = parsed.graph;
    println!("{} vertices, {} edges", g.n(), g.m());

    let labelled = io::random_labels(&g, k, 1).expect("label count");
    let dir = std::env::temp_dir().join(format!("labelled-clique-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("graph.lab");
    fs::write(&path, io::write_labels(&labelled)).expect("writable temp dir");
    let reread = io::parse_labels(&fs::read_to_string(&path).expect("just written"), &g).expect("round trip");
    assert_eq!(
        reread.labelled_edges().collect::<Vec<_>>(),
        labelled.labelled_edges().collect::<Vec<_>>()
    );
    println!("labels written to {}", path.display());

    let s = solve(&reread, budget).expect("positive budget");
    let witness: Vec<usize> = s.clique.iter().map(|v| v + 1).collect();
    let cost = check_witness(&reread, &witness, budget).expect("solver witnesses verify");
    println!("budget {budget}: clique {witness:?} cost {cost}");
    fs::remove_dir_all(&dir).ok();
}
