//! Train on perturbed dominance graphs, test on Elo tournaments: does each
//! measure track how spread out the players' abilities are?
//!
//!     cargo run --release --example relative_correlations -- [count]

use rankability::eval::{run_experiment, CorrelationTable, ExperimentConfig, Protocol};
use rankability::Result;

fn main() -> Result<()> {
    let count = std::env::args().nth(1).map_or(1000, |s| s.parse().expect("count is an integer"));
    let table = run(&[8, 20, 50], count)?;
    print!("{table}");
    Ok(())
}

pub fn run(sizes: &[usize], count: usize) -> Result<CorrelationTable> {
    let mut table = CorrelationTable::new();
    for sparse in [false, true] {
        for &n in sizes {
            let mut cfg = ExperimentConfig::for_protocol(Protocol::Relative, n, sparse, 2024);
            cfg.train_count = count;
            cfg.test_count = count;
            table.add_result(&run_experiment(&cfg)?);
        }
    }
    Ok(table)
}
