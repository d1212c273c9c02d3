//! Predictor variables for the learned rankability measure.

use crate::eigen::{symmetric_eigenvalues, Matrix};
use crate::error::Result;
use crate::graph::Digraph;
use crate::spectral::spectral_parts;

pub const FEATURE_COUNT: usize = 5;

pub const FEATURE_NAMES: [&str; FEATURE_COUNT] =
    ["triangles", "contradictions", "out_degree_std", "algebraic_connectivity", "draws"];

/// The five predictors, in the order the forest sees them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureVector {
    pub triangles: u64,
    pub contradictions: u64,
    pub out_degree_std: f64,
    pub algebraic_connectivity: f64,
    pub draws: u64,
}

impl FeatureVector {
    pub fn to_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.triangles as f64,
            self.contradictions as f64,
            self.out_degree_std,
            self.algebraic_connectivity,
            self.draws as f64,
        ]
    }
}

impl From<FeatureVector> for [f64; FEATURE_COUNT] {
    fn from(f: FeatureVector) -> Self {
        f.to_array()
    }
}

/// Directed 3-cycles, each counted once up to rotation: `trace(A^3) / 3`.
pub fn count_triangles(g: &Digraph) -> u64 {
    let n = g.n();
    // trace(A^3) = sum_{i,j} (A^2)_{ij} A_{ji}
    let mut closed = 0u64;
    for i in 0..n {
        for j in 0..n {
            if !g.has_edge(j, i) {
                continue;
            }
            closed += (0..n).filter(|&k| g.has_edge(i, k) && g.has_edge(k, j)).count() as u64;
        }
    }
    closed / 3
}

/// Unordered pairs with edges both ways.
pub fn count_contradictions(g: &Digraph) -> u64 {
    count_pairs(g, |a, b| a && b)
}

/// Unordered pairs with no edge either way.
pub fn count_draws(g: &Digraph) -> u64 {
    count_pairs(g, |a, b| !a && !b)
}

fn count_pairs(g: &Digraph, pred: impl Fn(bool, bool) -> bool) -> u64 {
    let n = g.n();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if pred(g.has_edge(i, j), g.has_edge(j, i)) {
                count += 1;
            }
        }
    }
    count
}

/// Population standard deviation (divisor `n`) of the out-degrees.
pub fn out_degree_std(g: &Digraph) -> f64 {
    let d = g.out_degrees();
    let n = d.len() as f64;
    let mean = d.iter().sum::<usize>() as f64 / n;
    let var = d.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / n;
    var.sqrt()
}

/// Wu's directed algebraic connectivity with the out-degree Laplacian:
/// the minimum of `x' ((L + L') / 2) x` over unit `x` orthogonal to the
/// all-ones vector.
pub fn algebraic_connectivity(g: &Digraph) -> Result<f64> {
    let n = g.n();
    let l = spectral_parts(g).laplacian;
    let mut sym = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            sym[(i, j)] = 0.5 * (l[(i, j)] + l[(j, i)]);
        }
    }
    // Householder reflector H with H e_0 = 1/sqrt(n); columns 1.. of H span 1-perp.
    let u = 1.0 / (n as f64).sqrt();
    let mut v = vec![-u; n];
    v[0] += 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let h = |i: usize, j: usize| -> f64 {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - 2.0 * v[i] * v[j] / vv
    };
    let hm: Vec<f64> = (0..n * n).map(|k| h(k / n, k % n)).collect();
    // M = H' sym H, keep the trailing (n-1) block
    let mut tmp = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            tmp[i * n + j] = (0..n).map(|k| sym[(i, k)] * hm[k * n + j]).sum();
        }
    }
    let m = n - 1;
    let mut restricted = Matrix::zeros(m);
    for a in 0..m {
        for b in 0..m {
            let (i, j) = (a + 1, b + 1);
            restricted[(a, b)] = (0..n).map(|k| hm[k * n + i] * tmp[k * n + j]).sum();
        }
    }
    // symmetrize away rounding
    for a in 0..m {
        for b in a + 1..m {
            let avg = 0.5 * (restricted[(a, b)] + restricted[(b, a)]);
            restricted[(a, b)] = avg;
            restricted[(b, a)] = avg;
        }
    }
    Ok(symmetric_eigenvalues(&restricted)?[0])
}

pub fn feature_vector(g: &Digraph) -> Result<FeatureVector> {
    Ok(FeatureVector {
        triangles: count_triangles(g),
        contradictions: count_contradictions(g),
        out_degree_std: out_degree_std(g),
        algebraic_connectivity: algebraic_connectivity(g)?,
        draws: count_draws(g),
    })
}
