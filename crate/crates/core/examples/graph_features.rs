//! The five features the forest model sees.
//!
//!     cargo run --release --example graph_features

use rankability::features::{feature_vector, FEATURE_NAMES};
use rankability::{Digraph, Result};

fn main() -> Result<()> {
    run()
}

pub fn run() -> Result<()> {
    let graphs = [
        ("dominance", Digraph::complete_dominance(6)?),
        ("cycle", Digraph::cycle(6)?),
        ("complete", Digraph::complete(6)?),
        ("empty", Digraph::empty(6)?),
        ("two-cycle pair", Digraph::complete_dominance(6)?.with_edge(5, 0, true)?),
    ];
    print!("{:<15}", "");
    for name in FEATURE_NAMES {
        print!("{name:>24}");
    }
    println!();
    for (name, g) in &graphs {
        print!("{name:<15}");
        for v in feature_vector(g)?.to_array() {
            print!("{v:>24.6}");
        }
        println!();
    }
    Ok(())
}
