//! Spectral rankability.
//!
//! A graph is compared to the complete dominance graph on the same number
//! of vertices through the Hausdorff distance between spectra: that of the
//! out-degree matrix `D` and of the Laplacian `L = D - A`, each against the
//! benchmark spectrum `{0, 1, ..., n-1}`.

use num_complex::Complex64;

use crate::eigen::{eigenvalues, ComplexSpectrum, Matrix};
use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Out-degree matrix, Laplacian and benchmark diagonal of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParts {
    /// Diagonal of `D`.
    pub degree: Vec<f64>,
    pub laplacian: Matrix,
    /// Diagonal of `S`: `n-1, n-2, ..., 0`.
    pub benchmark: Vec<f64>,
}

impl SpectralParts {
    pub fn degree_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.degree)
    }

    pub fn benchmark_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.benchmark)
    }
}

pub fn spectral_parts(g: &Digraph) -> SpectralParts {
    let n = g.n();
    // integer Laplacian first so row sums are exactly zero
    let degrees = g.out_degrees();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let entry = if i == j { degrees[i] as i64 } else { -(g.entry(i, j) as i64) };
            data[i * n + j] = entry as f64;
        }
    }
    SpectralParts {
        degree: degrees.iter().map(|&d| d as f64).collect(),
        laplacian: Matrix::from_row_major(n, data).expect("n*n entries"),
        benchmark: (0..n).rev().map(|v| v as f64).collect(),
    }
}

/// `max_{x in a} min_{y in b} |x - y|`.
pub fn spectral_variation(a: &ComplexSpectrum, b: &ComplexSpectrum) -> Result<f64> {
    directed(a.values(), b.values())
}

/// `max(sv_b(a), sv_a(b))`.
pub fn hausdorff(a: &ComplexSpectrum, b: &ComplexSpectrum) -> Result<f64> {
    Ok(directed(a.values(), b.values())?.max(directed(b.values(), a.values())?))
}

fn directed(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    Ok(a.iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

/// Every intermediate quantity of a spectral rankability computation.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub degree_spectrum: ComplexSpectrum,
    pub laplacian_spectrum: ComplexSpectrum,
    pub benchmark_spectrum: ComplexSpectrum,
    pub hd_degree: f64,
    pub hd_laplacian: f64,
    /// Value before clamping to `[0, 1]`.
    pub raw: f64,
    pub value: f64,
}

pub fn spectral_report(g: &Digraph) -> Result<SpectralReport> {
    let n = g.n();
    let parts = spectral_parts(g);
    // D and S are diagonal; their spectra are their diagonals
    let degree_spectrum = ComplexSpectrum::from_real(parts.degree.iter().copied())?;
    let benchmark_spectrum = ComplexSpectrum::from_real(parts.benchmark.iter().copied())?;
    let laplacian_spectrum = eigenvalues(&parts.laplacian)?;
    let hd_degree = hausdorff(&degree_spectrum, &benchmark_spectrum)?;
    let hd_laplacian = hausdorff(&laplacian_spectrum, &benchmark_spectrum)?;
    let raw = 1.0 - (hd_degree + hd_laplacian) / (2.0 * (n as f64 - 1.0));
    let value = raw.clamp(0.0, 1.0);
    if value != raw {
        log::debug!("spectral rankability {raw} clamped to {value} (n = {n})");
    }
    Ok(SpectralReport {
        degree_spectrum,
        laplacian_spectrum,
        benchmark_spectrum,
        hd_degree,
        hd_laplacian,
        raw,
        value,
    })
}

/// `1 - (hd(D, S) + hd(L, S)) / (2(n-1))`, clamped to `[0, 1]`.
pub fn spectral_rankability(g: &Digraph) -> Result<f64> {
    spectral_report(g).map(|r| r.value)
}

/// Closed form for a directed `n`-cycle.
pub fn spectral_rankability_cycle(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooSmall { min: 3, got: n });
    }
    let nf = n as f64;
    let num = if n.is_multiple_of(2) {
        2.0 * nf - 5.0
    } else {
        let e = Complex64::from_polar(1.0, -std::f64::consts::PI / nf);
        nf - 2.0 + (Complex64::new(nf - 2.0, 0.0) - e).norm()
    };
    Ok(1.0 - num / (2.0 * nf - 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn real(v: &[f64]) -> ComplexSpectrum {
        ComplexSpectrum::from_real(v.iter().copied()).unwrap()
    }

    #[test]
    fn parts_of_dominance_and_cycle() {
        let p = spectral_parts(&Digraph::complete_dominance(4).unwrap());
        assert_eq!(p.degree, vec![3.0, 2.0, 1.0, 0.0]);
        assert_eq!(p.benchmark, vec![3.0, 2.0, 1.0, 0.0]);
        for i in 0..4 {
            assert_eq!(p.laplacian[(i, i)], 3.0 - i as f64);
            for j in 0..i {
                assert_eq!(p.laplacian[(i, j)], 0.0);
            }
        }
        let c = spectral_parts(&Digraph::cycle(7).unwrap());
        assert_eq!(c.degree_matrix(), Matrix::identity(7));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.random_range(2..20);
            let g = Digraph::from_fn(n, |_, _| rng.random::<bool>()).unwrap();
            let l = spectral_parts(&g).laplacian;
            for i in 0..n {
                assert_eq!((0..n).map(|j| l[(i, j)]).sum::<f64>(), 0.0);
            }
        }
    }

    #[test]
    fn variation_and_hausdorff_examples() {
        let a = real(&[0.0]);
        let b = real(&[0.0, 5.0]);
        assert_eq!(spectral_variation(&a, &b).unwrap(), 0.0);
        assert_eq!(spectral_variation(&b, &a).unwrap(), 5.0);
        assert_eq!(hausdorff(&a, &b).unwrap(), 5.0);
        assert_eq!(hausdorff(&b, &b).unwrap(), 0.0);
        assert_eq!(hausdorff(&real(&[0.0]), &real(&[3.0])).unwrap(), 3.0);
        for n in 3..10 {
            let s: Vec<f64> = (0..n).map(|v| v as f64).collect();
            assert_eq!(hausdorff(&real(&[1.0]), &real(&s)).unwrap(), n as f64 - 2.0);
        }
    }

    #[test]
    fn cycle_laplacian_variations_even() {
        for n in [4usize, 6, 8, 10] {
            let r = spectral_report(&Digraph::cycle(n).unwrap()).unwrap();
            let sv_s_l = spectral_variation(&r.laplacian_spectrum, &r.benchmark_spectrum).unwrap();
            let sv_l_s = spectral_variation(&r.benchmark_spectrum, &r.laplacian_spectrum).unwrap();
            assert!(sv_s_l <= 1.0 + 1e-9);
            assert!((sv_l_s - (n as f64 - 3.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn example_graph_value() {
        let r = spectral_report(&example_graph()).unwrap();
        assert!((r.hd_degree - 1.0).abs() < 1e-12);
        assert!((r.hd_laplacian - 1.0).abs() < 1e-9);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn dominance_is_perfect() {
        for n in 2..30 {
            assert_eq!(spectral_rankability(&Digraph::complete_dominance(n).unwrap()).unwrap(), 1.0);
        }
    }

    #[test]
    fn cycle_closed_form_values() {
        assert!((spectral_rankability_cycle(4).unwrap() - 0.5).abs() < 1e-15);
        assert!((spectral_rankability_cycle(3).unwrap() - 0.5).abs() < 1e-15);
        assert!((spectral_rankability_cycle(6).unwrap() - 0.3).abs() < 1e-15);
        assert!(spectral_rankability_cycle(2).is_err());
        assert!(spectral_rankability_cycle(10_001).unwrap() < 1e-3);
        for n in 3..=12 {
            let direct = spectral_rankability(&Digraph::cycle(n).unwrap()).unwrap();
            assert!((direct - spectral_rankability_cycle(n).unwrap()).abs() < 1e-6, "n={n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        fn arb_graph() -> impl Strategy<Value = Digraph> {
            (2usize..14, 0.0f64..1.0).prop_flat_map(|(n, density)| {
                proptest::collection::vec(0.0f64..1.0, n * n).prop_map(move |u| {
                    Digraph::from_fn(n, |i, j| u[i * n + j] < density).unwrap()
                })
            })
        }

        fn arb_points() -> impl Strategy<Value = ComplexSpectrum> {
            proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..8).prop_map(|v| {
                ComplexSpectrum::new(v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect())
                    .unwrap()
            })
        }

        proptest! {
            #[test]
            fn hausdorff_is_symmetric_and_nonnegative(a in arb_points(), b in arb_points()) {
                let ab = hausdorff(&a, &b).unwrap();
                prop_assert!(ab >= 0.0);
                prop_assert_eq!(ab, hausdorff(&b, &a).unwrap());
                prop_assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
            }

            #[test]
            fn invariant_under_relabeling(g in arb_graph(), seed in any::<u64>()) {
                let n = g.n();
                let mut perm: Vec<usize> = (0..n).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for i in (1..n).rev() {
                    perm.swap(i, rng.random_range(0..=i));
                }
                let a = spectral_rankability(&g).unwrap();
                let b = spectral_rankability(&g.relabeled(&perm).unwrap()).unwrap();
                prop_assert!((a - b).abs() < 1e-6, "{} vs {}", a, b);
                prop_assert!((0.0..=1.0).contains(&a));
            }

            #[test]
            fn laplacian_spectrum_conjugate_closed(g in arb_graph()) {
                let r = spectral_report(&g).unwrap();
                prop_assert!(r.laplacian_spectrum.is_conjugate_closed(1e-8));
                prop_assert_eq!(r.laplacian_spectrum.len(), g.n());
            }
        }
    }
}
