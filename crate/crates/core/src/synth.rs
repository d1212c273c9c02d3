//! Synthetic graphs with a known rankability label.
//!
//! Two families:
//!
//! - perturbed dominance graphs: start from a complete dominance graph and
//!   flip every off-diagonal adjacency entry with probability `p`; the label
//!   is `t = 1 - 2p`, or `t = c(1 - 2p)` when edges are afterwards kept with
//!   probability `c`;
//! - Elo tournaments: items with abilities play every pair once or twice,
//!   with outcome probabilities from an Elo model extended with draws; the
//!   label is the mean absolute win-probability gap over pairs.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::graph::Digraph;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorId {
    #[serde(rename = "target")]
    TargetDominance,
    #[serde(rename = "sparse-target")]
    SparseTargetDominance,
    Elo,
    SparseElo,
}

impl GeneratorId {
    pub fn is_sparse(self) -> bool {
        matches!(self, GeneratorId::SparseTargetDominance | GeneratorId::SparseElo)
    }

    pub fn is_elo(self) -> bool {
        matches!(self, GeneratorId::Elo | GeneratorId::SparseElo)
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorId::TargetDominance => "target",
            GeneratorId::SparseTargetDominance => "sparse-target",
            GeneratorId::Elo => "elo",
            GeneratorId::SparseElo => "sparse-elo",
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "target" => Ok(GeneratorId::TargetDominance),
            "sparse-target" => Ok(GeneratorId::SparseTargetDominance),
            "elo" => Ok(GeneratorId::Elo),
            "sparse-elo" => Ok(GeneratorId::SparseElo),
            other => Err(Error::InvalidConfig(format!("unknown generator {other:?}"))),
        }
    }
}

/// Parameters a sample was drawn with.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorParams {
    pub generator: GeneratorId,
    /// Flip probability; `None` for Elo samples.
    pub p: Option<f64>,
    /// Edge-retention probability, 1 for complete data.
    pub c: f64,
    pub abilities: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSample {
    pub graph: Digraph,
    pub label: f64,
    pub params: GeneratorParams,
}

/// Flips each off-diagonal entry of the complete dominance graph with probability `p`.
pub fn perturb_dominance<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Digraph> {
    check_probability("p", p, 0.0, 0.5)?;
    Digraph::from_fn(n, |i, j| (i < j) ^ (rng.random::<f64>() < p))
}

/// `c (1 - 2p)`.
pub fn target_rankability(p: f64, c: f64) -> Result<f64> {
    check_probability("p", p, 0.0, 0.5)?;
    check_probability("c", c, 0.0, 1.0)?;
    Ok(c * (1.0 - 2.0 * p))
}

/// Keeps each edge independently with probability `c`.
pub fn sparsify<R: Rng + ?Sized>(g: &Digraph, c: f64, rng: &mut R) -> Result<Digraph> {
    check_probability("c", c, 0.0, 1.0)?;
    Digraph::from_fn(g.n(), |i, j| g.has_edge(i, j) && rng.random::<f64>() < c)
}

/// Elo expected score of ability `a_i` against `a_j`.
pub fn elo_expected(a_i: f64, a_j: f64) -> f64 {
    1.0 / (1.0 + 10f64.powf((a_j - a_i) / 400.0))
}

/// Outcome probabilities of one game between `i` and `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EloProbs {
    pub win_ij: f64,
    pub win_ji: f64,
    pub draw: f64,
}

pub fn elo_probs(a_i: f64, a_j: f64) -> EloProbs {
    let e_ij = elo_expected(a_i, a_j);
    let e_ji = 1.0 - e_ij;
    let draw = e_ij * e_ji;
    EloProbs { win_ij: e_ij * (1.0 - draw), win_ji: e_ji * (1.0 - draw), draw }
}

/// `2c sum_{i<j} |P_ij - P_ji| / (n(n-1))`.
pub fn relative_rankability(abilities: &[f64], c: f64) -> Result<f64> {
    let n = abilities.len();
    if n < 2 {
        return Err(Error::TooSmall { min: 2, got: n });
    }
    check_probability("c", c, 0.0, 1.0)?;
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let pr = elo_probs(abilities[i], abilities[j]);
            total += (pr.win_ij - pr.win_ji).abs();
        }
    }
    Ok(2.0 * c * total / (n * (n - 1)) as f64)
}

/// Plays every pair `passes` times (1 or 2). One uniform draw decides each
/// game: `i` beats `j` below `P_ij`, `j` beats `i` above `P_ij + P_d`, and
/// the middle band is a draw with no edge.
pub fn gen_elo_graph<R: Rng + ?Sized>(abilities: &[f64], passes: u8, rng: &mut R) -> Result<Digraph> {
    let n = abilities.len();
    if n < 2 {
        return Err(Error::TooSmall { min: 2, got: n });
    }
    if !(1..=2).contains(&passes) {
        return Err(Error::InvalidConfig(format!("passes must be 1 or 2, got {passes}")));
    }
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let pr = elo_probs(abilities[i], abilities[j]);
            for _ in 0..passes {
                let tau: f64 = rng.random();
                if tau < pr.win_ij {
                    rows[i][j] = 1;
                } else if tau > pr.win_ij + pr.draw {
                    rows[j][i] = 1;
                }
            }
        }
    }
    Digraph::from_adjacency(&rows)
}

/// How item abilities are drawn for Elo samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AbilityDistribution {
    /// Every ability independently uniform on `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
    /// Per sample, a spread `s` with `log10 s ~ U(log10 lo, log10 hi)`;
    /// abilities are then uniform on `[0, s]`.
    LogUniformSpread { lo: f64, hi: f64 },
}

impl Default for AbilityDistribution {
    /// Spreads from 100 to 10000 Elo points. A fixed range leaves the
    /// relative rankability of a sample almost determined by `n`, so labels
    /// barely vary across a dataset.
    fn default() -> Self {
        AbilityDistribution::LogUniformSpread { lo: 100.0, hi: 10_000.0 }
    }
}

impl AbilityDistribution {
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        let (lo, hi) = match *self {
            AbilityDistribution::Uniform { lo, hi } => (lo, hi),
            AbilityDistribution::LogUniformSpread { lo, hi } => {
                let (a, b) = (lo.log10(), hi.log10());
                (0.0, 10f64.powf(uniform(rng, a, b)))
            }
        };
        (0..n).map(|_| uniform(rng, lo, hi)).collect()
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            AbilityDistribution::Uniform { lo, hi } => lo.is_finite() && hi.is_finite() && lo <= hi,
            AbilityDistribution::LogUniformSpread { lo, hi } => lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("bad ability distribution {self:?}")))
        }
    }
}

/// Edge-retention setting for sparse generators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Retention {
    Fixed(f64),
    Uniform { lo: f64, hi: f64 },
}

#[derive(Clone, Debug)]
pub struct DatasetConfig {
    pub n: usize,
    pub count: usize,
    pub generator: GeneratorId,
    /// Range `p` is drawn from; equal ends fix it.
    pub p_range: (f64, f64),
    /// Used by the sparse generators only.
    pub retention: Retention,
    pub abilities: AbilityDistribution,
    pub passes: u8,
    pub seed: u64,
}

impl DatasetConfig {
    pub fn new(generator: GeneratorId, n: usize, count: usize, seed: u64) -> Self {
        Self {
            n,
            count,
            generator,
            p_range: (0.0, 0.5),
            retention: Retention::Uniform { lo: 0.0, hi: 1.0 },
            abilities: AbilityDistribution::default(),
            passes: 2,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidConfig("count must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::TooSmall { min: 2, got: self.n });
        }
        let (lo, hi) = self.p_range;
        check_probability("p", lo, 0.0, 0.5)?;
        check_probability("p", hi, lo, 0.5)?;
        match self.retention {
            Retention::Fixed(c) => check_probability("c", c, 0.0, 1.0)?,
            Retention::Uniform { lo, hi } => {
                check_probability("c", lo, 0.0, 1.0)?;
                check_probability("c", hi, lo, 1.0)?;
            }
        }
        self.abilities.validate()?;
        if !(1..=2).contains(&self.passes) {
            return Err(Error::InvalidConfig(format!("passes must be 1 or 2, got {}", self.passes)));
        }
        Ok(())
    }
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Draws sample `index` of the dataset described by `cfg`.
pub fn gen_sample(cfg: &DatasetConfig, index: usize) -> Result<LabeledSample> {
    let mut rng = rng::stream(cfg.seed, index as u64);
    let rng = &mut rng;
    let c = if cfg.generator.is_sparse() {
        match cfg.retention {
            Retention::Fixed(c) => c,
            Retention::Uniform { lo, hi } => uniform(rng, lo, hi),
        }
    } else {
        1.0
    };
    if cfg.generator.is_elo() {
        let abilities = cfg.abilities.sample(cfg.n, rng);
        let mut graph = gen_elo_graph(&abilities, cfg.passes, rng)?;
        if cfg.generator.is_sparse() {
            graph = sparsify(&graph, c, rng)?;
        }
        let label = relative_rankability(&abilities, c)?;
        Ok(LabeledSample {
            graph,
            label,
            params: GeneratorParams { generator: cfg.generator, p: None, c, abilities: Some(abilities) },
        })
    } else {
        let p = uniform(rng, cfg.p_range.0, cfg.p_range.1);
        let mut graph = perturb_dominance(cfg.n, p, rng)?;
        if cfg.generator.is_sparse() {
            graph = sparsify(&graph, c, rng)?;
        }
        let label = target_rankability(p, c)?;
        Ok(LabeledSample {
            graph,
            label,
            params: GeneratorParams { generator: cfg.generator, p: Some(p), c, abilities: None },
        })
    }
}

/// Draws a whole dataset; the result depends only on `cfg`.
pub fn gen_dataset(cfg: &DatasetConfig) -> Result<Vec<LabeledSample>> {
    cfg.validate()?;
    (0..cfg.count).into_par_iter().map(|i| gen_sample(cfg, i)).collect()
}

/// One row of `labels.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelRow {
    pub id: String,
    pub label: f64,
    pub p: Option<f64>,
    pub c: f64,
    pub generator: GeneratorId,
}

pub const LABELS_FILE: &str = "labels.csv";

fn graph_file(dir: &Path, id: &str) -> std::path::PathBuf {
    dir.join(format!("{id}.txt"))
}

/// Writes `<id>.txt` adjacency files plus `labels.csv` into `dir`.
pub fn write_dataset(dir: &Path, samples: &[LabeledSample]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let width = samples.len().saturating_sub(1).to_string().len().max(5);
    let mut w = csv::Writer::from_path(dir.join(LABELS_FILE))?;
    for (i, s) in samples.iter().enumerate() {
        let id = format!("{i:0width$}");
        s.graph.save(graph_file(dir, &id))?;
        w.serialize(LabelRow {
            id,
            label: s.label,
            p: s.params.p,
            c: s.params.c,
            generator: s.params.generator,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a directory written by [`write_dataset`].
pub fn read_dataset(dir: &Path) -> Result<Vec<(LabelRow, Digraph)>> {
    let path = dir.join(LABELS_FILE);
    let mut r = csv::Reader::from_path(&path)?;
    let mut out = Vec::new();
    for (i, row) in r.deserialize::<LabelRow>().enumerate() {
        let row = row.map_err(|e| Error::MalformedRow {
            path: path.clone(),
            line: i as u64 + 2,
            reason: e.to_string(),
        })?;
        let g = Digraph::load(graph_file(dir, &row.id))?;
        out.push((row, g));
    }
    Ok(out)
}
