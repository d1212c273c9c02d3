//! Spectral rankability: Hausdorff distance between the out-degree and
//! Laplacian spectra of a graph and the spectrum {0, 1, ..., n-1} of a
//! complete dominance graph.
//!
//!     cargo run --release --example spectral_rankability

use rankability::spectral::{spectral_rankability, spectral_rankability_cycle, spectral_report};
use rankability::{Digraph, Result};

fn main() -> Result<()> {
    run()
}

pub fn run() -> Result<()> {
    let g = Digraph::from_adjacency(&[[0, 1, 1, 1], [0, 0, 0, 0], [0, 1, 0, 0], [0, 1, 0, 0]])?;
    let rep = spectral_report(&g)?;
    println!("sigma(L) = {:?}", rep.laplacian_spectrum.sorted().iter().map(|z| z.re).collect::<Vec<_>>());
    println!("hd(D,S) = {}, hd(L,S) = {}, R_s = {:.6}", rep.hd_degree, rep.hd_laplacian, rep.value);

    // unlike edge rankability, cycles drift towards zero
    println!("\n n  closed form  computed");
    for n in [3, 4, 5, 8, 13, 21, 40] {
        println!("{n:2}  {:.8}   {:.8}", spectral_rankability_cycle(n)?, spectral_rankability(&Digraph::cycle(n)?)?);
    }

    let dominance = Digraph::complete_dominance(6)?;
    println!("\ncomplete dominance: R_s = {}", spectral_rankability(&dominance)?);
    println!("complete graph:     R_s = {}", spectral_rankability(&Digraph::complete(6)?)?);
    Ok(())
}
