//! Labelled synthetic graphs: perturbed dominance graphs with a target
//! rankability, and Elo tournaments with a relative rankability.
//!
//!     cargo run --release --example synthetic_graphs -- /tmp/dataset

use rankability::features::{count_contradictions, count_draws};
use rankability::rng;
use rankability::synth::{
    elo_probs, gen_dataset, gen_elo_graph, perturb_dominance, relative_rankability, sparsify, target_rankability,
    write_dataset, DatasetConfig, GeneratorId,
};
use rankability::Result;

fn main() -> Result<()> {
    let out = std::env::args().nth(1).map(std::path::PathBuf::from);
    run(out.as_deref())
}

pub fn run(out: Option<&std::path::Path>) -> Result<()> {
    let mut r = rng::stream(7, 0);

    for p in [0.0, 0.1, 0.25, 0.5] {
        let g = perturb_dominance(10, p, &mut r)?;
        let sparse = sparsify(&g, 0.6, &mut r)?;
        println!(
            "p={p:<4}  t={:.2}  edges {:2} -> {:2} after sparsify (t={:.2})",
            target_rankability(p, 1.0)?,
            g.edge_count(),
            sparse.edge_count(),
            target_rankability(p, 0.6)?
        );
    }

    let pr = elo_probs(1600.0, 1200.0);
    println!("\n400-point gap: win {:.4}  loss {:.4}  draw {:.4}", pr.win_ij, pr.win_ji, pr.draw);
    let abilities = [1000.0, 1100.0, 1250.0, 1500.0, 1900.0, 2400.0];
    let g = gen_elo_graph(&abilities, 2, &mut r)?;
    println!(
        "Elo tournament: r = {:.3}, {} edges, {} two-cycles, {} unplayed pairs",
        relative_rankability(&abilities, 1.0)?,
        g.edge_count(),
        count_contradictions(&g),
        count_draws(&g)
    );

    let samples = gen_dataset(&DatasetConfig::new(GeneratorId::SparseElo, 12, 200, 1))?;
    let mean = samples.iter().map(|s| s.label).sum::<f64>() / samples.len() as f64;
    println!("\n{} sparse Elo samples, mean label {mean:.3}", samples.len());
    if let Some(dir) = out {
        write_dataset(dir, &samples)?;
        println!("written to {}", dir.display());
    }
    Ok(())
}
