//! Spearman rank correlation and the synthetic-data experiment harness.
//!
//! An experiment trains a forest on one generator, draws a test set from
//! another (or the same), evaluates each requested measure on every test
//! graph and reports Spearman's rho between measure values and labels.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edge::{edge_rankability_with, SearchOptions};
use crate::error::{Error, Result};
use crate::forest::{fit_graphs, RandomForestModel, TrainConfig};
use crate::graph::Digraph;
use crate::plot::{scatter_svg, Series};
use crate::rng::derive_seed;
use crate::spectral::spectral_rankability;
use crate::synth::{gen_dataset, AbilityDistribution, DatasetConfig, GeneratorId, LabeledSample};

/// Fractional ranks (1-based); tied values share the mean of their positions.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && x[idx[j]] == x[idx[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let r = (i + 1 + j) as f64 / 2.0;
        for &k in &idx[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateInput("constant vector has no rank correlation".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Spearman's rho: Pearson correlation of tie-averaged ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    if x.len() < 2 {
        return Err(Error::TooSmall { min: 2, got: x.len() });
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::DegenerateInput("NaN in input".into()));
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Pairwise Spearman matrix. Symmetric with a unit diagonal; a pair
/// involving a constant series gets NaN.
pub fn correlation_matrix(series: &[(String, Vec<f64>)]) -> Result<Vec<Vec<f64>>> {
    let len = series.first().map_or(0, |s| s.1.len());
    if let Some(s) = series.iter().find(|s| s.1.len() != len) {
        return Err(Error::LengthMismatch { expected: len, got: s.1.len() });
    }
    if len < 2 {
        return Err(Error::TooSmall { min: 2, got: len });
    }
    let k = series.len();
    let mut m = vec![vec![1.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let rho = match spearman(&series[i].1, &series[j].1) {
                Ok(v) => v,
                Err(Error::DegenerateInput(_)) => f64::NAN,
                Err(e) => return Err(e),
            };
            m[i][j] = rho;
            m[j][i] = rho;
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "R_e")]
    Edge,
    #[serde(rename = "R_s")]
    Spectral,
    #[serde(rename = "R_f")]
    Forest,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Edge, Measure::Spectral, Measure::Forest];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Edge => "R_e",
            Measure::Spectral => "R_s",
            Measure::Forest => "R_f",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r_e" | "re" | "edge" => Ok(Measure::Edge),
            "r_s" | "rs" | "spectral" => Ok(Measure::Spectral),
            "r_f" | "rf" | "forest" => Ok(Measure::Forest),
            _ => Err(Error::InvalidConfig(format!("unknown measure {s:?}"))),
        }
    }
}

/// Which published protocol an experiment follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Protocol {
    /// Train and test on perturbed dominance graphs.
    Target,
    /// Train on perturbed dominance graphs, test on Elo graphs.
    Relative,
}

impl FromStr for Protocol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "target" => Ok(Protocol::Target),
            "2" | "relative" => Ok(Protocol::Relative),
            _ => Err(Error::InvalidConfig(format!("unknown table {s:?}, expected 1 or 2"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub n: usize,
    pub train_count: usize,
    pub test_count: usize,
    pub train_generator: GeneratorId,
    pub test_generator: GeneratorId,
    pub measures: Vec<Measure>,
    pub seed: u64,
    /// R_e is skipped (reported NA) above this size.
    pub r_e_max_n: usize,
    pub abilities: AbilityDistribution,
    pub passes: u8,
    pub forest: TrainConfig,
}

impl ExperimentConfig {
    /// The standard 1000/1000 setup for `protocol`, all measures.
    pub fn for_protocol(protocol: Protocol, n: usize, sparse: bool, seed: u64) -> Self {
        let train = if sparse { GeneratorId::SparseTargetDominance } else { GeneratorId::TargetDominance };
        let test = match protocol {
            Protocol::Target => train,
            Protocol::Relative if sparse => GeneratorId::SparseElo,
            Protocol::Relative => GeneratorId::Elo,
        };
        Self {
            n,
            train_count: 1000,
            test_count: 1000,
            train_generator: train,
            test_generator: test,
            measures: Measure::ALL.to_vec(),
            seed,
            r_e_max_n: 8,
            abilities: AbilityDistribution::default(),
            passes: 2,
            forest: TrainConfig::default(),
        }
    }

    pub fn sparse(&self) -> bool {
        self.test_generator.is_sparse()
    }

    fn dataset(&self, generator: GeneratorId, count: usize, salt: u64) -> DatasetConfig {
        let mut d = DatasetConfig::new(generator, self.n, count, derive_seed(self.seed, salt));
        d.abilities = self.abilities;
        d.passes = self.passes;
        d
    }

    /// Training-set description.
    pub fn train_dataset(&self) -> DatasetConfig {
        self.dataset(self.train_generator, self.train_count, 1)
    }

    /// Test-set description.
    pub fn test_dataset(&self) -> DatasetConfig {
        self.dataset(self.test_generator, self.test_count, 2)
    }

    fn wants(&self, m: Measure) -> bool {
        self.measures.contains(&m)
    }
}

/// Result of one measure over the test set.
#[derive(Debug)]
pub struct MeasureOutcome {
    pub measure: Measure,
    /// One value per test graph; `None` if the measure was skipped.
    pub values: Option<Vec<f64>>,
    /// `None` if skipped, otherwise Spearman against the labels.
    pub rho: Option<Result<f64>>,
}

impl MeasureOutcome {
    pub fn rho_value(&self) -> Option<f64> {
        self.rho.as_ref().and_then(|r| r.as_ref().ok().copied())
    }
}

#[derive(Debug)]
pub struct ExperimentResult {
    pub n: usize,
    pub sparse: bool,
    pub labels: Vec<f64>,
    pub outcomes: Vec<MeasureOutcome>,
    pub model: Option<RandomForestModel>,
}

impl ExperimentResult {
    pub fn outcome(&self, m: Measure) -> Option<&MeasureOutcome> {
        self.outcomes.iter().find(|o| o.measure == m)
    }

    pub fn rho(&self, m: Measure) -> Option<f64> {
        self.outcome(m).and_then(MeasureOutcome::rho_value)
    }

    pub fn column(&self) -> Column {
        Column { n: self.n, sparse: self.sparse }
    }

    /// Rows `index,label,<measure>...`; skipped measures are left empty.
    pub fn write_scatter_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        let mut head = vec!["index".to_string(), "label".to_string()];
        head.extend(self.outcomes.iter().map(|o| o.measure.name().to_string()));
        w.write_record(&head)?;
        for (i, label) in self.labels.iter().enumerate() {
            let mut row = vec![i.to_string(), label.to_string()];
            for o in &self.outcomes {
                row.push(o.values.as_ref().map_or(String::new(), |v| v[i].to_string()));
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn evaluate(cfg: &ExperimentConfig, m: Measure, g: &Digraph, model: Option<&RandomForestModel>) -> Result<f64> {
    match m {
        Measure::Edge => {
            let opts = SearchOptions { max_n: cfg.r_e_max_n, parallel: false, ..SearchOptions::default() };
            edge_rankability_with(g, &opts).map(|(_, r)| r)
        }
        Measure::Spectral => spectral_rankability(g),
        Measure::Forest => model.expect("forest trained when requested").rankability(g),
    }
}

/// Runs one experiment end to end. Deterministic in `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    if cfg.measures.is_empty() {
        return Err(Error::InvalidConfig("no measures requested".into()));
    }
    let model = if cfg.wants(Measure::Forest) {
        let train = gen_dataset(&cfg.train_dataset())?;
        let (graphs, labels): (Vec<Digraph>, Vec<f64>) = train.into_iter().map(|s| (s.graph, s.label)).unzip();
        let tc = TrainConfig { seed: derive_seed(cfg.seed, 3), ..cfg.forest.clone() };
        Some(fit_graphs(&graphs, &labels, &tc)?)
    } else {
        None
    };
    let test: Vec<LabeledSample> = gen_dataset(&cfg.test_dataset())?;
    let labels: Vec<f64> = test.iter().map(|s| s.label).collect();

    let mut outcomes = Vec::new();
    for m in Measure::ALL.into_iter().filter(|&m| cfg.wants(m)) {
        if m == Measure::Edge && cfg.n > cfg.r_e_max_n {
            log::info!("skipping R_e at n={} (limit {})", cfg.n, cfg.r_e_max_n);
            outcomes.push(MeasureOutcome { measure: m, values: None, rho: None });
            continue;
        }
        let values: Vec<f64> = test
            .par_iter()
            .map(|s| evaluate(cfg, m, &s.graph, model.as_ref()))
            .collect::<Result<_>>()?;
        let rho = spearman(&values, &labels);
        if let Err(e) = &rho {
            log::warn!("{m}: {e}");
        }
        outcomes.push(MeasureOutcome { measure: m, values: Some(values), rho: Some(rho) });
    }
    Ok(ExperimentResult { n: cfg.n, sparse: cfg.sparse(), labels, outcomes, model })
}

/// A column of a correlation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column {
    pub n: usize,
    pub sparse: bool,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", if self.sparse { "sparse" } else { "complete" }, self.n)
    }
}

/// Spearman rhos by measure and column. Missing cells render as `NA`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorrelationTable {
    cells: BTreeMap<(Measure, Column), f64>,
    columns: Vec<Column>,
    rows: Vec<Measure>,
}

impl CorrelationTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, m: Measure, col: Column, rho: Option<f64>) {
        if !self.rows.contains(&m) {
            self.rows.push(m);
            self.rows.sort();
        }
        if !self.columns.contains(&col) {
            self.columns.push(col);
            self.columns.sort_by_key(|c| (c.sparse, c.n));
        }
        match rho {
            Some(v) => {
                self.cells.insert((m, col), v);
            }
            None => {
                self.cells.remove(&(m, col));
            }
        }
    }

    /// Adds every requested measure of `result` as one column.
    pub fn add_result(&mut self, result: &ExperimentResult) {
        for o in &result.outcomes {
            self.insert(o.measure, result.column(), o.rho_value());
        }
    }

    pub fn get(&self, m: Measure, col: Column) -> Option<f64> {
        self.cells.get(&(m, col)).copied()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn measures(&self) -> &[Measure] {
        &self.rows
    }

    /// CSV with full-precision values and `NA` for missing cells.
    pub fn to_csv(&self) -> String {
        self.render(|v| v.to_string(), ',')
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    fn render(&self, cell: impl Fn(f64) -> String, sep: char) -> String {
        let mut out = String::from("measure");
        for c in &self.columns {
            out.push(sep);
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for &m in &self.rows {
            out.push_str(m.name());
            for &c in &self.columns {
                out.push(sep);
                out.push_str(&self.get(m, c).map_or_else(|| "NA".to_string(), &cell));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CorrelationTable {
    /// Tab-separated, three decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|v| format!("{v:.3}"), '\t'))
    }
}

/// Reads a scatter CSV written by [`ExperimentResult::write_scatter_csv`]
/// and renders label against every measure column.
pub fn plot_scatter_csv(input: impl AsRef<Path>) -> Result<String> {
    let path = input.as_ref();
    let mut r = csv::Reader::from_path(path)?;
    let head = r.headers()?.clone();
    let label_col = head.iter().position(|h| h == "label").ok_or_else(|| Error::MissingHeader {
        path: path.to_path_buf(),
        expected: "index,label,<measures>",
    })?;
    let cols: Vec<(usize, String)> =
        head.iter().enumerate().filter(|(i, h)| *i != label_col && *h != "index").map(|(i, h)| (i, h.to_string())).collect();
    let mut series: Vec<Series> = cols.iter().map(|(_, name)| Series::new(name.clone(), Vec::new())).collect();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let parse = |i: usize| -> Result<Option<f64>> {
            let s = rec.get(i).unwrap_or("").trim();
            if s.is_empty() {
                return Ok(None);
            }
            s.parse().map(Some).map_err(|_| Error::MalformedRow {
                path: path.to_path_buf(),
                line: line as u64 + 2,
                reason: format!("not a number: {s:?}"),
            })
        };
        let Some(x) = parse(label_col)? else { continue };
        for (k, (i, _)) in cols.iter().enumerate() {
            if let Some(y) = parse(*i)? {
                series[k].points.push((x, y));
            }
        }
    }
    series.retain(|s| !s.points.is_empty());
    Ok(scatter_svg("rankability against label", "label", "measure", &series))
}
