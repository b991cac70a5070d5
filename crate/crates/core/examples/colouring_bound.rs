//! Greedy colouring as a clique bound: prints the colour order and the
//! running colour count for the eight-vertex example, then shows how a
//! search node prunes with it.
//!
//! cargo run --example colouring_bound

use labelled_clique::{colour_order, fixtures, Bitset};

fn main() {
    let g = fixtures::eight();
    let all = g.vertex_set();
    let r = colour_order(&g, &all);
    println!("vertex  bound");
    for (v, b) in r.order.iter().zip(&r.bounds) {
        println!("{:>6}  {b:>5}", v + 1);
    }

    // Candidates are taken from the back. With an incumbent of size 3 and
    // an empty clique, pass one needs a bound above 3 to grow the clique;
    // pass two, looking for a cheaper clique of the same size, keeps
    // bounds equal to 3 as well.
    let incumbent = 3;
    let branched = |keep: fn(u32, u32) -> bool| -> Vec<usize> {
        r.order
            .iter()
            .zip(&r.bounds)
            .filter(|&(_, &b)| keep(b, incumbent))
            .map(|(v, _)| v + 1)
            .collect()
    };
    println!("incumbent size {incumbent}: pass one branches on {:?}", branched(|b, i| b > i));
    println!("incumbent size {incumbent}: pass two branches on {:?}", branched(|b, i| b >= i));

    let sub = Bitset::from_indices(g.n(), [0, 1, 3, 4]);
    let r = colour_order(&g, &sub);
    let order: Vec<usize> = r.order.iter().map(|v| v + 1).collect();
    println!("restricted to {{1, 2, 4, 5}}: order {order:?} bounds {:?}", r.bounds);
}
