//! Train a random-forest rankability model, save it, load it back and score
//! a few graphs.
//!
//!     cargo run --release --example forest_model

use rankability::forest::{fit_graphs, RandomForestModel, TrainConfig};
use rankability::synth::{gen_dataset, DatasetConfig, GeneratorId};
use rankability::{Digraph, Result};

fn main() -> Result<()> {
    run(1000)
}

pub fn run(count: usize) -> Result<()> {
    let n = 10;
    let train = gen_dataset(&DatasetConfig::new(GeneratorId::TargetDominance, n, count, 11))?;
    let (graphs, labels): (Vec<Digraph>, Vec<f64>) = train.into_iter().map(|s| (s.graph, s.label)).unzip();
    let model = fit_graphs(&graphs, &labels, &TrainConfig::with_seed(3))?;
    let depth = model.trees().iter().map(|t| t.depth()).max().unwrap_or(0);
    println!("{} trees, deepest {depth}, labels in {:?}", model.n_trees(), model.label_range());

    let dir = tempfile_dir()?;
    let path = dir.join("model.rf");
    model.save(&path)?;
    let model = RandomForestModel::load(&path)?;
    std::fs::remove_dir_all(&dir)?;

    for (name, g) in [
        ("dominance", Digraph::complete_dominance(n)?),
        ("one upset", Digraph::complete_dominance(n)?.toggle_edge(0, 9)?.toggle_edge(9, 0)?),
        ("cycle", Digraph::cycle(n)?),
        ("complete", Digraph::complete(n)?),
        ("empty", Digraph::empty(n)?),
    ] {
        println!("{name:<10} R_f = {:.3}", model.rankability(&g)?);
    }
    Ok(())
}

fn tempfile_dir() -> Result<std::path::PathBuf> {
    let dir = std::env::temp_dir().join(format!("rankability-forest-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}
