//! Edge rankability: how many edge edits separate a graph from the nearest
//! complete dominance graph, and how many dominance graphs tie at that
//! distance.
//!
//!     cargo run --release --example edge_rankability

use rankability::edge::{edge_rankability_cycle, edge_rankability_with, SearchOptions};
use rankability::{Digraph, Result};

fn main() -> Result<()> {
    run()
}

pub fn run() -> Result<()> {
    // 0 beats everyone, 1 loses to everyone, 2 and 3 never met
    let g = Digraph::from_adjacency(&[[0, 1, 1, 1], [0, 0, 0, 0], [0, 1, 0, 0], [0, 1, 0, 0]])?;
    let opts = SearchOptions { collect_minimizers: true, ..SearchOptions::default() };
    let (kp, r) = edge_rankability_with(&g, &opts)?;
    println!("k = {}, p = {}, R_e = {r:.6}", kp.k, kp.p);
    for o in kp.minimizers.unwrap_or_default() {
        println!("  nearest ordering {o}");
    }

    // cycles look surprisingly rankable by this measure
    println!("\n n  R_e(cycle)  search");
    for n in 3..=9 {
        let (kp, r) = edge_rankability_with(&Digraph::cycle(n)?, &SearchOptions::default())?;
        println!("{n:2}  {:.8}  {r:.8} (k={}, p={})", edge_rankability_cycle(n)?, kp.k, kp.p);
    }
    Ok(())
}
