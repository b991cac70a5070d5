//! The small worked instances shipped in `fixtures/`.

use crate::graph::{Graph, LabelledGraph};
use crate::io::{parse_dimacs, parse_labels};

pub const SEVEN_DIMACS: &str = include_str!("../fixtures/seven.clq");
pub const SEVEN_LABELS: &str = include_str!("../fixtures/seven.lab");
pub const EIGHT_DIMACS: &str = include_str!("../fixtures/eight.clq");

/// Seven vertices, fifteen edges, four labels. Its maximum clique
/// `{1,2,3,4,5}` (1-based) uses all four labels; under a budget of three
/// the unique cheapest maximum is `{4,5,6,7}` at cost two.
pub fn seven() -> LabelledGraph {
    let g = parse_dimacs(SEVEN_DIMACS).expect("seven fixture");
    parse_labels(SEVEN_LABELS, &g).expect("seven labels")
}

/// Eight vertices whose greedy colouring takes four colours.
pub fn eight() -> Graph {
    parse_dimacs(EIGHT_DIMACS).expect("eight fixture")
}
