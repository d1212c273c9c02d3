//! How well each measure recovers the perturbation level of perturbed
//! dominance graphs, as Spearman correlations over a held-out test set.
//! Also writes a scatter SVG of the n = 8 complete-data run.
//!
//!     cargo run --release --example target_correlations -- [count] [out.svg]

use rankability::eval::{plot_scatter_csv, run_experiment, CorrelationTable, ExperimentConfig, Protocol};
use rankability::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().map_or(1000, |s| s.parse().expect("count is an integer"));
    let svg = args.next().map(std::path::PathBuf::from);
    let table = run(&[8, 20, 50], count, svg.as_deref())?;
    print!("{table}");
    Ok(())
}

pub fn run(sizes: &[usize], count: usize, svg: Option<&std::path::Path>) -> Result<CorrelationTable> {
    let mut table = CorrelationTable::new();
    for sparse in [false, true] {
        for &n in sizes {
            let mut cfg = ExperimentConfig::for_protocol(Protocol::Target, n, sparse, 2024);
            cfg.train_count = count;
            cfg.test_count = count;
            let result = run_experiment(&cfg)?;
            if let (Some(out), false, 8) = (svg, sparse, n) {
                let csv = out.with_extension("csv");
                result.write_scatter_csv(&csv)?;
                std::fs::write(out, plot_scatter_csv(&csv)?)?;
            }
            table.add_result(&result);
        }
    }
    Ok(table)
}
