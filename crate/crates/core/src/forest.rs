//! Random-forest regression over graph feature vectors.
//!
//! Trees are CART regression trees grown to purity on bootstrap resamples,
//! splitting on the threshold that minimizes the summed squared error of the
//! two children. Candidate thresholds are midpoints between consecutive
//! distinct values. Equal-gain candidates resolve to the lowest feature
//! index, then the smallest threshold.
//!
//! A model file is JSON with every float written as a hexadecimal float
//! string, so a save/load round trip is bit-exact.

use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{feature_vector, FeatureVector, FEATURE_COUNT, FEATURE_NAMES};
use crate::graph::Digraph;
use crate::rng;

pub const MODEL_FORMAT: &str = "rankability-forest";
pub const MODEL_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub n_trees: usize,
    /// Features considered at each split.
    pub max_features: usize,
    pub min_samples_split: usize,
    pub min_samples_leaf: usize,
    pub max_depth: Option<usize>,
    /// Draw a bootstrap resample per tree; otherwise every tree sees the full set.
    pub bootstrap: bool,
    /// Resample size; defaults to the training-set size.
    pub bootstrap_size: Option<usize>,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            n_trees: 100,
            max_features: FEATURE_COUNT,
            min_samples_split: 2,
            min_samples_leaf: 1,
            max_depth: None,
            bootstrap: true,
            bootstrap_size: None,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_owned()));
        if self.n_trees == 0 {
            return bad("n_trees must be positive");
        }
        if self.max_features == 0 || self.max_features > FEATURE_COUNT {
            return bad("max_features must be in 1..=5");
        }
        if self.min_samples_split < 2 {
            return bad("min_samples_split must be at least 2");
        }
        if self.min_samples_leaf == 0 {
            return bad("min_samples_leaf must be positive");
        }
        if self.max_depth == Some(0) {
            return bad("max_depth must be positive");
        }
        if self.bootstrap_size == Some(0) {
            return bad("bootstrap_size must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TreeNode {
    Split { feature: usize, threshold: f64, left: usize, right: usize },
    Leaf { value: f64 },
}

/// A regression tree stored as a preorder node array rooted at index 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Tree {
    nodes: Vec<TreeNode>,
}

impl Tree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn predict(&self, x: &[f64; FEATURE_COUNT]) -> f64 {
        let mut at = 0;
        loop {
            match self.nodes[at] {
                TreeNode::Leaf { value } => return value,
                TreeNode::Split { feature, threshold, left, right } => {
                    at = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[TreeNode], at: usize) -> usize {
            match nodes[at] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomForestModel {
    trees: Vec<Tree>,
    trained_n: usize,
    label_range: (f64, f64),
    seed: u64,
}

struct Builder<'a, R: Rng> {
    x: &'a [[f64; FEATURE_COUNT]],
    y: &'a [f64],
    cfg: &'a TrainConfig,
    rng: R,
    nodes: Vec<TreeNode>,
}

struct Candidate {
    feature: usize,
    threshold: f64,
    sse: f64,
    split_at: usize,
}

impl<R: Rng> Builder<'_, R> {
    fn leaf_value(&self, idx: &[usize]) -> f64 {
        let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for &i in idx {
            lo = lo.min(self.y[i]);
            hi = hi.max(self.y[i]);
            sum += self.y[i];
        }
        (sum / idx.len() as f64).clamp(lo, hi)
    }

    fn build(&mut self, idx: &mut [usize], depth: usize) -> usize {
        let at = self.nodes.len();
        self.nodes.push(TreeNode::Leaf { value: 0.0 });

        let first = self.y[idx[0]];
        let pure = idx.iter().all(|&i| self.y[i] == first);
        let depth_reached = self.cfg.max_depth.is_some_and(|d| depth >= d);
        let split = if pure || depth_reached || idx.len() < self.cfg.min_samples_split {
            None
        } else {
            self.best_split(idx)
        };

        match split {
            None => {
                self.nodes[at] = TreeNode::Leaf { value: if pure { first } else { self.leaf_value(idx) } };
            }
            Some(c) => {
                sort_by_feature(idx, self.x, self.y, c.feature);
                let (left_idx, right_idx) = idx.split_at_mut(c.split_at);
                let left = self.build(left_idx, depth + 1);
                let right = self.build(right_idx, depth + 1);
                self.nodes[at] = TreeNode::Split { feature: c.feature, threshold: c.threshold, left, right };
            }
        }
        at
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let mut features: Vec<usize> = (0..FEATURE_COUNT).collect();
        if self.cfg.max_features < FEATURE_COUNT {
            for i in 0..self.cfg.max_features {
                let j = self.rng.random_range(i..FEATURE_COUNT);
                features.swap(i, j);
            }
            features.truncate(self.cfg.max_features);
            features.sort_unstable();
        }
        features
    }

    fn best_split(&mut self, idx: &mut [usize]) -> Option<Candidate> {
        let len = idx.len();
        let min_leaf = self.cfg.min_samples_leaf;
        let mut best: Option<Candidate> = None;
        let total: f64 = idx.iter().map(|&i| self.y[i]).sum();
        let total_sq: f64 = idx.iter().map(|&i| self.y[i] * self.y[i]).sum();

        for feature in self.candidate_features() {
            sort_by_feature(idx, self.x, self.y, feature);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for s in 1..len {
                let prev = idx[s - 1];
                sum += self.y[prev];
                sum_sq += self.y[prev] * self.y[prev];
                let (a, b) = (self.x[prev][feature], self.x[idx[s]][feature]);
                if a >= b || s < min_leaf || len - s < min_leaf {
                    continue;
                }
                let (nl, nr) = (s as f64, (len - s) as f64);
                let right = total - sum;
                let right_sq = total_sq - sum_sq;
                let sse = (sum_sq - sum * sum / nl) + (right_sq - right * right / nr);
                if best.as_ref().is_none_or(|b| sse < b.sse) {
                    let mut threshold = a + (b - a) / 2.0;
                    if threshold >= b {
                        threshold = a;
                    }
                    best = Some(Candidate { feature, threshold, sse, split_at: s });
                }
            }
        }
        best
    }
}

/// Canonical order for a feature: by value, then label, then row index.
fn sort_by_feature(idx: &mut [usize], x: &[[f64; FEATURE_COUNT]], y: &[f64], feature: usize) {
    idx.sort_by(|&a, &b| {
        x[a][feature]
            .total_cmp(&x[b][feature])
            .then(y[a].total_cmp(&y[b]))
            .then(a.cmp(&b))
    });
}

fn grow_tree(x: &[[f64; FEATURE_COUNT]], y: &[f64], cfg: &TrainConfig, tree_index: usize) -> Tree {
    let mut rng = rng::stream(cfg.seed, tree_index as u64);
    let mut idx: Vec<usize> = if cfg.bootstrap {
        let size = cfg.bootstrap_size.unwrap_or(x.len());
        (0..size).map(|_| rng.random_range(0..x.len())).collect()
    } else {
        (0..x.len()).collect()
    };
    let mut b = Builder { x, y, cfg, rng, nodes: Vec::new() };
    b.build(&mut idx, 0);
    Tree { nodes: b.nodes }
}

/// Trains a forest on raw feature rows. `trained_n` records the vertex
/// count of the training graphs.
pub fn fit(
    x: &[[f64; FEATURE_COUNT]],
    y: &[f64],
    trained_n: usize,
    cfg: &TrainConfig,
) -> Result<RandomForestModel> {
    cfg.validate()?;
    if x.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: y.len() });
    }
    if y.iter().any(|v| !v.is_finite()) || x.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("training data must be finite".into()));
    }
    let lo = y.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let trees = (0..cfg.n_trees).into_par_iter().map(|t| grow_tree(x, y, cfg, t)).collect();
    Ok(RandomForestModel { trees, trained_n, label_range: (lo, hi), seed: cfg.seed })
}

/// Computes features for each graph and trains on them.
pub fn fit_graphs(graphs: &[Digraph], y: &[f64], cfg: &TrainConfig) -> Result<RandomForestModel> {
    let n = graphs.first().ok_or(Error::EmptyTrainingSet)?.n();
    if let Some(g) = graphs.iter().find(|g| g.n() != n) {
        return Err(Error::VertexCountMismatch { trained: n, got: g.n() });
    }
    let x: Vec<[f64; FEATURE_COUNT]> = graphs
        .par_iter()
        .map(|g| feature_vector(g).map(|f| f.to_array()))
        .collect::<Result<_>>()?;
    fit(&x, y, n, cfg)
}

impl RandomForestModel {
    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn trained_n(&self) -> usize {
        self.trained_n
    }

    pub fn label_range(&self) -> (f64, f64) {
        self.label_range
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn feature_names(&self) -> [&'static str; FEATURE_COUNT] {
        FEATURE_NAMES
    }

    /// Mean of the trees' predictions, within the training label range.
    pub fn predict(&self, x: &[f64; FEATURE_COUNT]) -> f64 {
        let sum: f64 = self.trees.iter().map(|t| t.predict(x)).sum();
        (sum / self.trees.len() as f64).clamp(self.label_range.0, self.label_range.1)
    }

    pub fn predict_features(&self, f: &FeatureVector) -> f64 {
        self.predict(&f.to_array())
    }

    /// Learned rankability of a graph with the model's vertex count.
    pub fn rankability(&self, g: &Digraph) -> Result<f64> {
        if g.n() != self.trained_n {
            return Err(Error::VertexCountMismatch { trained: self.trained_n, got: g.n() });
        }
        Ok(self.predict_features(&feature_vector(g)?))
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: MODEL_FORMAT.to_owned(),
            version: MODEL_VERSION,
            n_trees: self.trees.len(),
            trained_n: self.trained_n,
            feature_names: FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
            label_range: [hexf::format(self.label_range.0), hexf::format(self.label_range.1)],
            seed: self.seed,
            trees: self
                .trees
                .iter()
                .map(|t| TreeRecord { nodes: t.nodes.iter().map(NodeRecord::from).collect() })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let corrupt = |e: &dyn std::fmt::Display| Error::CorruptModel(e.to_string());
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| corrupt(&e))?;
        match value.get("version").and_then(|v| v.as_u64()) {
            Some(MODEL_VERSION) => {}
            Some(found) => return Err(Error::SchemaVersionMismatch { found, expected: MODEL_VERSION }),
            None => return Err(Error::CorruptModel("missing version".into())),
        }
        let file: ModelFile = serde_json::from_value(value).map_err(|e| corrupt(&e))?;
        file.into_model()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Learned rankability of `g` under `model`.
pub fn rf_rankability(model: &RandomForestModel, g: &Digraph) -> Result<f64> {
    model.rankability(g)
}

pub fn save_model(model: &RandomForestModel, path: impl AsRef<Path>) -> Result<()> {
    model.save(path)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<RandomForestModel> {
    RandomForestModel::load(path)
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u64,
    n_trees: usize,
    trained_n: usize,
    feature_names: Vec<String>,
    label_range: [String; 2],
    seed: u64,
    trees: Vec<TreeRecord>,
}

#[derive(Serialize, Deserialize)]
struct TreeRecord {
    nodes: Vec<NodeRecord>,
}

#[derive(Serialize, Deserialize)]
struct NodeRecord {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    feature_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left_id: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_id: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

impl From<&TreeNode> for NodeRecord {
    fn from(node: &TreeNode) -> Self {
        match *node {
            TreeNode::Split { feature, threshold, left, right } => NodeRecord {
                kind: "split".into(),
                feature_index: Some(feature),
                threshold: Some(hexf::format(threshold)),
                left_id: Some(left),
                right_id: Some(right),
                value: None,
            },
            TreeNode::Leaf { value } => NodeRecord {
                kind: "leaf".into(),
                feature_index: None,
                threshold: None,
                left_id: None,
                right_id: None,
                value: Some(hexf::format(value)),
            },
        }
    }
}

impl ModelFile {
    fn into_model(self) -> Result<RandomForestModel> {
        let corrupt = |msg: String| Error::CorruptModel(msg);
        if self.format != MODEL_FORMAT {
            return Err(corrupt(format!("unexpected format {:?}", self.format)));
        }
        if self.feature_names != FEATURE_NAMES {
            return Err(corrupt(format!("unexpected feature names {:?}", self.feature_names)));
        }
        if self.n_trees == 0 || self.n_trees != self.trees.len() {
            return Err(corrupt(format!("n_trees {} but {} trees", self.n_trees, self.trees.len())));
        }
        let float = |s: &str| hexf::parse(s).ok_or_else(|| corrupt(format!("bad float {s:?}")));
        let label_range = (float(&self.label_range[0])?, float(&self.label_range[1])?);
        if label_range.0.partial_cmp(&label_range.1).is_none_or(|o| o.is_gt()) {
            return Err(corrupt("label range is empty".into()));
        }
        let mut trees = Vec::with_capacity(self.trees.len());
        for (t, rec) in self.trees.into_iter().enumerate() {
            let count = rec.nodes.len();
            if count == 0 {
                return Err(corrupt(format!("tree {t} has no nodes")));
            }
            let mut nodes = Vec::with_capacity(count);
            for (id, node) in rec.nodes.into_iter().enumerate() {
                let bad = || corrupt(format!("tree {t} node {id} is malformed"));
                nodes.push(match node.kind.as_str() {
                    "split" => {
                        let feature = node.feature_index.ok_or_else(bad)?;
                        let left = node.left_id.ok_or_else(bad)?;
                        let right = node.right_id.ok_or_else(bad)?;
                        let threshold = float(node.threshold.as_deref().ok_or_else(bad)?)?;
                        // preorder: children come after their parent, which rules out cycles
                        if feature >= FEATURE_COUNT || left <= id || right <= id || left >= count || right >= count {
                            return Err(bad());
                        }
                        TreeNode::Split { feature, threshold, left, right }
                    }
                    "leaf" => TreeNode::Leaf { value: float(node.value.as_deref().ok_or_else(bad)?)? },
                    _ => return Err(bad()),
                });
            }
            trees.push(Tree { nodes });
        }
        Ok(RandomForestModel { trees, trained_n: self.trained_n, label_range, seed: self.seed })
    }
}

/// Hexadecimal float text (`0x1.8p+1`), exact for every finite `f64`.
pub mod hexf {
    const FRAC_BITS: u32 = 52;
    const FRAC_MASK: u64 = (1 << FRAC_BITS) - 1;

    pub fn format(v: f64) -> String {
        if v.is_nan() {
            return "nan".into();
        }
        if v.is_infinite() {
            return if v > 0.0 { "inf".into() } else { "-inf".into() };
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { "-" } else { "" };
        let biased = ((bits >> FRAC_BITS) & 0x7ff) as i64;
        let frac = bits & FRAC_MASK;
        let (lead, exp) = match (biased, frac) {
            (0, 0) => return format!("{sign}0x0p+0"),
            (0, _) => (0, -1022),
            _ => (1, biased - 1023),
        };
        let digits = format!("{frac:013x}");
        let digits = digits.trim_end_matches('0');
        let exp_sign = if exp < 0 { '-' } else { '+' };
        if digits.is_empty() {
            format!("{sign}0x{lead}p{exp_sign}{}", exp.abs())
        } else {
            format!("{sign}0x{lead}.{digits}p{exp_sign}{}", exp.abs())
        }
    }

    pub fn parse(s: &str) -> Option<f64> {
        match s {
            "nan" => return Some(f64::NAN),
            "inf" => return Some(f64::INFINITY),
            "-inf" => return Some(f64::NEG_INFINITY),
            _ => {}
        }
        let (negative, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let rest = rest.strip_prefix("0x")?;
        let (mantissa, exp) = rest.split_once('p')?;
        let exp: i64 = exp.parse().ok()?;
        let (lead, digits) = match mantissa.split_once('.') {
            Some((l, d)) => (l, d),
            None => (mantissa, ""),
        };
        if digits.len() > 13 || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return None;
        }
        let frac = if digits.is_empty() {
            0
        } else {
            u64::from_str_radix(digits, 16).ok()? << (4 * (13 - digits.len()))
        };
        let magnitude = match lead {
            "1" if (-1022..=1023).contains(&exp) => (((exp + 1023) as u64) << FRAC_BITS) | frac,
            "0" if frac == 0 && exp == 0 => 0,
            "0" if exp == -1022 => frac,
            _ => return None,
        };
        let sign = if negative { 1u64 << 63 } else { 0 };
        Some(f64::from_bits(sign | magnitude))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn random_rows(seed: u64, count: usize) -> (Vec<[f64; FEATURE_COUNT]>, Vec<f64>) {
        let mut rng = stream(seed, 0);
        let x: Vec<[f64; FEATURE_COUNT]> = (0..count)
            .map(|_| std::array::from_fn(|f| (rng.random_range(0..20) as f64) * (f + 1) as f64))
            .collect();
        let y = x.iter().map(|r| (r[0] - 0.5 * r[2] + 0.1 * r[4]).tanh() * 0.5 + 0.5).collect();
        (x, y)
    }

    #[test]
    fn constant_targets() {
        let (x, _) = random_rows(1, 200);
        let y = vec![0.5; x.len()];
        let model = fit(&x, &y, 8, &TrainConfig::default()).unwrap();
        let (probe, _) = random_rows(2, 100);
        for p in &probe {
            assert_eq!(model.predict(p), 0.5);
        }
    }

    #[test]
    fn single_sample() {
        let x = vec![[1.0, 2.0, 3.0, 4.0, 5.0]];
        let model = fit(&x, &[0.25], 8, &TrainConfig::default()).unwrap();
        for t in model.trees() {
            assert_eq!(t.nodes(), &[TreeNode::Leaf { value: 0.25 }]);
        }
        assert_eq!(model.predict(&[9.0; 5]), 0.25);
        let one = fit(&x, &[0.25], 8, &TrainConfig { n_trees: 1, ..Default::default() }).unwrap();
        assert_eq!(one.predict(&[-3.0; 5]), 0.25);
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(fit(&[], &[], 4, &TrainConfig::default()), Err(Error::EmptyTrainingSet)));
        assert!(matches!(
            fit(&[[0.0; 5]], &[0.1, 0.2], 4, &TrainConfig::default()),
            Err(Error::LengthMismatch { .. })
        ));
        let bad = TrainConfig { max_features: 6, ..Default::default() };
        assert!(fit(&[[0.0; 5]], &[0.1], 4, &bad).is_err());
        assert!(fit(&[[0.0; 5]], &[f64::NAN], 4, &TrainConfig::default()).is_err());
    }

    #[test]
    fn fully_grown_tree_interpolates() {
        let (x, y) = random_rows(3, 300);
        // deduplicate rows so the interpolation property applies
        let mut seen = std::collections::HashSet::new();
        let (x, y): (Vec<_>, Vec<_>) = x
            .into_iter()
            .zip(y)
            .filter(|(r, _)| seen.insert(r.map(f64::to_bits)))
            .unzip();
        let cfg = TrainConfig { n_trees: 1, bootstrap: false, ..Default::default() };
        let model = fit(&x, &y, 8, &cfg).unwrap();
        for (r, &label) in x.iter().zip(&y) {
            assert_eq!(model.predict(r), label);
        }
    }

    #[test]
    fn row_order_does_not_matter_without_bootstrap() {
        let (x, y) = random_rows(4, 250);
        let cfg = TrainConfig { n_trees: 3, bootstrap: false, ..Default::default() };
        let a = fit(&x, &y, 8, &cfg).unwrap();
        let mut order: Vec<usize> = (0..x.len()).collect();
        let mut rng = stream(99, 0);
        for i in (1..order.len()).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let xp: Vec<_> = order.iter().map(|&i| x[i]).collect();
        let yp: Vec<_> = order.iter().map(|&i| y[i]).collect();
        let b = fit(&xp, &yp, 8, &cfg).unwrap();
        let (probe, _) = random_rows(5, 200);
        for p in &probe {
            assert_eq!(a.predict(p), b.predict(p));
        }
    }

    #[test]
    fn tie_break_prefers_lowest_feature() {
        // features 0 and 1 separate the labels identically
        let x = vec![[0.0, 0.0, 5.0, 5.0, 5.0], [1.0, 1.0, 5.0, 5.0, 5.0]];
        let cfg = TrainConfig { n_trees: 1, bootstrap: false, ..Default::default() };
        let m = fit(&x, &[0.0, 1.0], 2, &cfg).unwrap();
        assert_eq!(
            m.trees()[0].nodes()[0],
            TreeNode::Split { feature: 0, threshold: 0.5, left: 1, right: 2 }
        );
    }

    #[test]
    fn depth_and_leaf_limits() {
        let (x, y) = random_rows(6, 300);
        let cfg = TrainConfig { n_trees: 5, max_depth: Some(3), ..Default::default() };
        let m = fit(&x, &y, 8, &cfg).unwrap();
        assert!(m.trees().iter().all(|t| t.depth() <= 3));
        let cfg = TrainConfig { n_trees: 2, min_samples_leaf: 40, bootstrap: false, ..Default::default() };
        let m = fit(&x, &y, 8, &cfg).unwrap();
        assert!(m.trees()[0].nodes().len() < 30);
        let cfg = TrainConfig { n_trees: 4, max_features: 2, ..Default::default() };
        assert_eq!(fit(&x, &y, 8, &cfg).unwrap(), fit(&x, &y, 8, &cfg).unwrap());
    }

    #[test]
    fn deterministic_and_round_trips() {
        let (x, y) = random_rows(7, 400);
        let cfg = TrainConfig::with_seed(11);
        let a = fit(&x, &y, 8, &cfg).unwrap();
        let b = fit(&x, &y, 8, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        let back = RandomForestModel::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let (probe, _) = random_rows(8, 100);
        for p in &probe {
            assert_eq!(a.predict(p).to_bits(), back.predict(p).to_bits());
        }
    }

    #[test]
    fn load_errors() {
        let (x, y) = random_rows(9, 50);
        let json = fit(&x, &y, 6, &TrainConfig { n_trees: 3, ..Default::default() }).unwrap().to_json();
        let wrong = json.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(
            RandomForestModel::from_json(&wrong),
            Err(Error::SchemaVersionMismatch { found: 2, expected: 1 })
        ));
        assert!(matches!(RandomForestModel::from_json(&json[..json.len() / 2]), Err(Error::CorruptModel(_))));
        let bad_child = json.replacen("\"left_id\": 1", "\"left_id\": 0", 1);
        assert!(matches!(RandomForestModel::from_json(&bad_child), Err(Error::CorruptModel(_))));
    }

    #[test]
    fn vertex_count_guard() {
        let g8 = Digraph::complete_dominance(8).unwrap();
        let graphs = vec![g8.clone(), Digraph::empty(8).unwrap()];
        let m = fit_graphs(&graphs, &[1.0, 0.0], &TrainConfig { n_trees: 2, ..Default::default() }).unwrap();
        assert_eq!(m.trained_n(), 8);
        assert!(rf_rankability(&m, &g8).is_ok());
        assert!(matches!(
            rf_rankability(&m, &Digraph::complete_dominance(20).unwrap()),
            Err(Error::VertexCountMismatch { trained: 8, got: 20 })
        ));
    }

    #[test]
    fn hex_float_examples() {
        assert_eq!(hexf::format(3.0), "0x1.8p+1");
        assert_eq!(hexf::format(1.0), "0x1p+0");
        assert_eq!(hexf::format(-0.1), "-0x1.999999999999ap-4");
        assert_eq!(hexf::format(0.0), "0x0p+0");
        assert_eq!(hexf::parse("0x1.8p+1"), Some(3.0));
        assert_eq!(hexf::parse("0x2p+1"), None);
        assert_eq!(hexf::parse("1.5"), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn hex_round_trip(bits in any::<u64>()) {
                let v = f64::from_bits(bits);
                let back = hexf::parse(&hexf::format(v)).unwrap();
                if v.is_nan() {
                    prop_assert!(back.is_nan());
                } else {
                    prop_assert_eq!(back.to_bits(), bits);
                }
            }
        }
    }
}
