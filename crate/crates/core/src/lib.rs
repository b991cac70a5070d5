//! Maximum labelled clique: given a graph whose edges carry labels and a
//! budget `b`, find the largest clique whose edges use at most `b` distinct
//! labels and, among those, one using the fewest labels.
//!
//! The solver is a bitset branch and bound with a greedy colouring bound,
//! run in two passes (size first, then cost), with an optional
//! thread-parallel search that shares one incumbent between workers.
//!
//! ```
//! use labelled_clique::{fixtures, solve};
//!
//! let g = fixtures::seven();
//! let best = solve(&g, 3).unwrap();
//! assert_eq!((best.size, best.cost), (4, 2));
//! ```

pub mod bitset;
pub mod cli;
pub mod colouring;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rng;
pub mod solver;

pub use bitset::Bitset;
pub use colouring::{colour_order, ColourResult};
pub use graph::{Graph, GraphError, LabelSet, LabelledGraph, Permutation};
pub use oracle::{oracle_solve, OracleResult};
pub use solver::{incumbent_key, is_better, solve, solve_parallel, SearchStats, Solution, SolveError};
