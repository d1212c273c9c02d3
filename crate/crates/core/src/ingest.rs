//! Season match results to per-season rankability reports.
//!
//! Input is a CSV with header `season,team_a,team_b,score_a,score_b`. Each
//! season becomes one graph: teams are vertices (sorted by label) and there
//! is an edge `i -> j` when `i` beat `j` at least once that season. Draws
//! add nothing. Every row is taken as a completed match.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::edge::{edge_rankability_with, SearchOptions};
use crate::error::{Error, Result};
use crate::eval::correlation_matrix;
use crate::forest::{fit_graphs, RandomForestModel, TrainConfig};
use crate::graph::{Digraph, LabelTable};
use crate::plot::{line_svg, scatter_matrix_svg};
use crate::rng::derive_seed;
use crate::spectral::spectral_rankability;
use crate::synth::{gen_dataset, DatasetConfig, GeneratorId};

pub const MATCH_HEADER: &str = "season,team_a,team_b,score_a,score_b";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchRecord {
    pub season: String,
    pub team_a: String,
    pub team_b: String,
    pub score_a: u32,
    pub score_b: u32,
}

/// Reads a match file.
pub fn parse_matches(path: impl AsRef<Path>) -> Result<Vec<MatchRecord>> {
    let path = path.as_ref();
    parse_matches_from(fs::File::open(path)?, path)
}

/// Like [`parse_matches`] over any reader; `path` only labels errors.
pub fn parse_matches_from<R: Read>(reader: R, path: &Path) -> Result<Vec<MatchRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(reader);
    let mut records = rdr.records();
    let missing = || Error::MissingHeader { path: path.to_path_buf(), expected: MATCH_HEADER };
    let header = records.next().ok_or_else(missing)??;
    let header: Vec<&str> = header.iter().map(str::trim).collect();
    if header.join(",") != MATCH_HEADER {
        return Err(missing());
    }

    let mut out = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |reason: String| Error::MalformedRow { path: path.to_path_buf(), line, reason };
        if rec.len() == 1 && rec[0].trim().is_empty() {
            continue;
        }
        if rec.len() != 5 {
            return Err(bad(format!("expected 5 fields, found {}", rec.len())));
        }
        let field = |i: usize| rec[i].trim();
        let score = |i: usize| {
            field(i).parse::<u32>().map_err(|_| bad(format!("score {:?} is not a non-negative integer", field(i))))
        };
        let r = MatchRecord {
            season: field(0).to_string(),
            team_a: field(1).to_string(),
            team_b: field(2).to_string(),
            score_a: score(3)?,
            score_b: score(4)?,
        };
        if r.season.is_empty() || r.team_a.is_empty() || r.team_b.is_empty() {
            return Err(bad("empty season or team".into()));
        }
        if r.team_a == r.team_b {
            return Err(bad(format!("team {:?} plays itself", r.team_a)));
        }
        out.push(r);
    }
    Ok(out)
}

/// Distinct season keys in lexicographic order.
pub fn seasons(records: &[MatchRecord]) -> Vec<String> {
    records.iter().map(|r| r.season.clone()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Graph of one season with its vertex labels.
pub fn season_graph(records: &[MatchRecord], season: &str) -> Result<(Digraph, LabelTable)> {
    let games: Vec<&MatchRecord> = records.iter().filter(|r| r.season == season).collect();
    if games.is_empty() {
        return Err(Error::UnknownSeason(season.to_string()));
    }
    let labels = LabelTable::new(games.iter().flat_map(|r| [r.team_a.as_str(), r.team_b.as_str()]));
    let n = labels.len();
    if n < 2 {
        return Err(Error::TooFewTeams { season: season.to_string(), teams: n });
    }
    let mut rows = vec![vec![0i64; n]; n];
    for g in games {
        let a = labels.index_of(&g.team_a).expect("label collected above");
        let b = labels.index_of(&g.team_b).expect("label collected above");
        if g.score_a > g.score_b {
            rows[a][b] = 1;
        } else if g.score_b > g.score_a {
            rows[b][a] = 1;
        }
    }
    Ok((Digraph::from_adjacency(&rows)?, labels))
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// R_e is computed only up to this many teams.
    pub re_max_n: usize,
    /// Train a model for any team count missing from the store.
    pub auto_train: bool,
    pub train_count: usize,
    pub seed: u64,
    pub forest: TrainConfig,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { re_max_n: 8, auto_train: true, train_count: 1000, seed: 0, forest: TrainConfig::default() }
    }
}

/// Forest models keyed by vertex count, optionally backed by a directory
/// of `rf_n<N>.json` files.
#[derive(Debug, Default)]
pub struct ModelStore {
    dir: Option<PathBuf>,
    models: BTreeMap<usize, RandomForestModel>,
}

impl ModelStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads every model file in `dir`; trained models are saved there too.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        let mut models = BTreeMap::new();
        if dir.is_dir() {
            for entry in fs::read_dir(&dir)? {
                let path = entry?.path();
                let Some(n) = model_file_n(&path) else { continue };
                let m = RandomForestModel::load(&path)?;
                if m.trained_n() != n {
                    return Err(Error::CorruptModel(format!(
                        "{} holds a model for n = {}",
                        path.display(),
                        m.trained_n()
                    )));
                }
                models.insert(n, m);
            }
        }
        Ok(Self { dir: Some(dir), models })
    }

    pub fn path_for(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("rf_n{n}.json"))
    }

    pub fn insert(&mut self, model: RandomForestModel) {
        self.models.insert(model.trained_n(), model);
    }

    pub fn get(&self, n: usize) -> Option<&RandomForestModel> {
        self.models.get(&n)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.models.keys().copied().collect()
    }

    /// Makes sure a model exists for each size, training where allowed.
    pub fn ensure(&mut self, sizes: &BTreeSet<usize>, opts: &ReportOptions) -> Result<()> {
        for &n in sizes {
            if self.models.contains_key(&n) {
                continue;
            }
            if !opts.auto_train {
                return Err(Error::ModelMissing(n));
            }
            log::info!("training forest for n={n} on {} samples", opts.train_count);
            let seed = derive_seed(opts.seed, n as u64);
            let data = gen_dataset(&DatasetConfig::new(GeneratorId::TargetDominance, n, opts.train_count, seed))?;
            let (graphs, labels): (Vec<Digraph>, Vec<f64>) = data.into_iter().map(|s| (s.graph, s.label)).unzip();
            let model = fit_graphs(&graphs, &labels, &TrainConfig { seed, ..opts.forest.clone() })?;
            if let Some(dir) = &self.dir {
                fs::create_dir_all(dir)?;
                model.save(Self::path_for(dir, n))?;
            }
            self.models.insert(n, model);
        }
        Ok(())
    }
}

fn model_file_n(path: &Path) -> Option<usize> {
    let name = path.file_name()?.to_str()?;
    name.strip_prefix("rf_n")?.strip_suffix(".json")?.parse().ok()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeasonReport {
    pub season: String,
    pub n_teams: usize,
    pub r_e: Option<f64>,
    pub r_s: f64,
    pub r_f: f64,
    pub re_skipped_too_large: bool,
}

#[derive(Clone, Debug)]
pub struct LeagueReport {
    pub seasons: Vec<SeasonReport>,
    /// Names for the rows and columns of `correlations`.
    pub measures: Vec<&'static str>,
    /// Spearman across seasons; `None` with fewer than two seasons.
    pub correlations: Option<Vec<Vec<f64>>>,
}

/// Evaluates the seasons in `seasons_wanted`, reported in that order, or every
/// season in key order if it is empty.
pub fn season_report(
    records: &[MatchRecord],
    seasons_wanted: &[String],
    models: &mut ModelStore,
    opts: &ReportOptions,
) -> Result<LeagueReport> {
    let keys: Vec<String> = if seasons_wanted.is_empty() {
        seasons(records)
    } else {
        let mut seen = BTreeSet::new();
        seasons_wanted.iter().filter(|s| seen.insert(s.as_str())).cloned().collect()
    };
    let graphs: Vec<(String, Digraph)> = keys
        .iter()
        .map(|s| season_graph(records, s).map(|(g, _)| (s.clone(), g)))
        .collect::<Result<_>>()?;
    models.ensure(&graphs.iter().map(|(_, g)| g.n()).collect(), opts)?;
    let models = &*models;

    let reports: Vec<SeasonReport> = graphs
        .par_iter()
        .map(|(season, g)| {
            let n = g.n();
            let skip = n > opts.re_max_n;
            let r_e = if skip {
                None
            } else {
                let so = SearchOptions { max_n: opts.re_max_n, parallel: false, ..SearchOptions::default() };
                Some(edge_rankability_with(g, &so)?.1)
            };
            let model = models.get(n).ok_or(Error::ModelMissing(n))?;
            Ok(SeasonReport {
                season: season.clone(),
                n_teams: n,
                r_e,
                r_s: spectral_rankability(g)?,
                r_f: model.rankability(g)?,
                re_skipped_too_large: skip,
            })
        })
        .collect::<Result<_>>()?;

    let mut measures = Vec::new();
    if !reports.is_empty() && reports.iter().all(|r| r.r_e.is_some()) {
        measures.push("R_e");
    }
    measures.extend(["R_s", "R_f"]);
    let mut report = LeagueReport { seasons: reports, measures, correlations: None };
    if report.seasons.len() >= 2 {
        report.correlations = Some(correlation_matrix(&report.series())?);
    }
    Ok(report)
}

impl LeagueReport {
    fn series(&self) -> Vec<(String, Vec<f64>)> {
        self.measures
            .iter()
            .map(|&m| {
                let v = self
                    .seasons
                    .iter()
                    .map(|r| match m {
                        "R_e" => r.r_e.unwrap_or(f64::NAN),
                        "R_s" => r.r_s,
                        _ => r.r_f,
                    })
                    .collect();
                (m.to_string(), v)
            })
            .collect()
    }

    pub fn seasons_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["season", "n_teams", "r_e", "r_s", "r_f"])?;
        for r in &self.seasons {
            w.write_record([
                r.season.clone(),
                r.n_teams.to_string(),
                r.r_e.map_or(String::new(), |v| v.to_string()),
                r.r_s.to_string(),
                r.r_f.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
    }

    /// Square matrix CSV with a leading name column; NaN cells are `NA`.
    pub fn correlations_csv(&self) -> String {
        let mut out = String::from("measure");
        for m in &self.measures {
            out.push(',');
            out.push_str(m);
        }
        out.push('\n');
        for (i, m) in self.measures.iter().enumerate() {
            out.push_str(m);
            for j in 0..self.measures.len() {
                out.push(',');
                match self.correlations.as_ref().map(|c| c[i][j]) {
                    Some(v) if v.is_finite() => out.push_str(&v.to_string()),
                    _ => out.push_str("NA"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Writes `seasons.csv`, `correlations.csv`, `timeseries.svg` and
    /// `scatter_matrix.svg` into `dir`.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        fs::write(dir.join("seasons.csv"), self.seasons_csv()?)?;
        fs::write(dir.join("correlations.csv"), self.correlations_csv())?;
        let keys: Vec<String> = self.seasons.iter().map(|r| r.season.clone()).collect();
        let series = self.series();
        fs::write(dir.join("timeseries.svg"), line_svg("rankability by season", &keys, "rankability", &series))?;
        fs::write(
            dir.join("scatter_matrix.svg"),
            scatter_matrix_svg("rankability measures across seasons", &series, self.correlations.as_deref()),
        )?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example_graph;

    fn parse(text: &str) -> Result<Vec<MatchRecord>> {
        parse_matches_from(text.as_bytes(), Path::new("games.csv"))
    }

    fn rec(season: &str, a: &str, b: &str, sa: u32, sb: u32) -> MatchRecord {
        MatchRecord { season: season.into(), team_a: a.into(), team_b: b.into(), score_a: sa, score_b: sb }
    }

    #[test]
    fn parses_rows() {
        let r = parse("season,team_a,team_b,score_a,score_b\n1974,Wales , Ireland,9,9\n\n1975,France,Wales,10,25\n").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], rec("1974", "Wales", "Ireland", 9, 9));
        assert_eq!(r[1].score_b, 25);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse(""), Err(Error::MissingHeader { .. })));
        assert!(matches!(parse("season,home,away,a,b\n"), Err(Error::MissingHeader { .. })));
        let e = parse("season,team_a,team_b,score_a,score_b\n2007,Arsenal,Chelsea,1,0\n2007,Arsenal,Chelsea,1\n").unwrap_err();
        assert!(matches!(e, Error::MalformedRow { line: 3, .. }), "{e}");
        let e = parse("season,team_a,team_b,score_a,score_b\n2007,Arsenal,Arsenal,1,0\n").unwrap_err();
        assert!(matches!(e, Error::MalformedRow { line: 2, .. }));
        let e = parse("season,team_a,team_b,score_a,score_b\n2007,A,B,-1,0\n").unwrap_err();
        assert!(matches!(e, Error::MalformedRow { .. }));
    }

    #[test]
    fn round_robin_without_upsets_is_dominance() {
        let teams = ["d", "a", "c", "b"];
        let mut recs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                // stronger team is the one earlier in alphabetical order
                let (x, y) = if teams[i] < teams[j] { (i, j) } else { (j, i) };
                recs.push(rec("s", teams[x], teams[y], 3, 1));
            }
        }
        let (g, labels) = season_graph(&recs, "s").unwrap();
        assert_eq!(labels.labels(), &["a", "b", "c", "d"]);
        assert_eq!(g, Digraph::complete_dominance(4).unwrap());
    }

    #[test]
    fn split_fixtures_make_two_cycle_and_draws_make_no_edge() {
        let recs =
            vec![rec("s", "A", "B", 2, 1), rec("s", "B", "A", 2, 1), rec("s", "A", "C", 0, 0), rec("t", "A", "B", 1, 0)];
        let (g, _) = season_graph(&recs, "s").unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2) && !g.has_edge(2, 0));
        assert!(matches!(season_graph(&recs, "zzz"), Err(Error::UnknownSeason(_))));
    }

    #[test]
    fn row_order_does_not_matter() {
        let mut recs = vec![rec("s", "A", "B", 2, 1), rec("s", "C", "B", 0, 4), rec("s", "C", "A", 1, 1)];
        let (g1, _) = season_graph(&recs, "s").unwrap();
        recs.reverse();
        let (g2, _) = season_graph(&recs, "s").unwrap();
        assert_eq!(g1, g2);
    }

    fn records_for(season: &str, g: &Digraph, names: &[&str]) -> Vec<MatchRecord> {
        let mut out = Vec::new();
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                match (g.has_edge(i, j), g.has_edge(j, i)) {
                    (true, false) => out.push(rec(season, names[i], names[j], 1, 0)),
                    (false, true) => out.push(rec(season, names[i], names[j], 0, 1)),
                    (true, true) => {
                        out.push(rec(season, names[i], names[j], 1, 0));
                        out.push(rec(season, names[j], names[i], 1, 0));
                    }
                    (false, false) => out.push(rec(season, names[i], names[j], 0, 0)),
                }
            }
        }
        out
    }

    fn quick_opts() -> ReportOptions {
        ReportOptions { train_count: 80, forest: TrainConfig { n_trees: 10, ..TrainConfig::default() }, ..Default::default() }
    }

    #[test]
    fn example_season_values() {
        let recs = records_for("1999", &example_graph(), &["w", "x", "y", "z"]);
        let mut store = ModelStore::in_memory();
        let report = season_report(&recs, &[], &mut store, &quick_opts()).unwrap();
        let s = &report.seasons[0];
        assert_eq!(s.n_teams, 4);
        assert!((s.r_e.unwrap() - (1.0 - 2.0 / 144.0)).abs() < 1e-12);
        assert!((s.r_s - 2.0 / 3.0).abs() < 1e-9);
        assert!((0.0..=1.0).contains(&s.r_f));
        assert!(report.correlations.is_none());
    }

    #[test]
    fn explicit_season_order_is_kept() {
        let mut recs = records_for("2010", &example_graph(), &["a", "b", "c", "d"]);
        recs.extend(records_for("2009", &Digraph::cycle(4).unwrap(), &["a", "b", "c", "d"]));
        let mut store = ModelStore::in_memory();
        let order = ["2010".to_string(), "2009".to_string(), "2010".to_string()];
        let report = season_report(&recs, &order, &mut store, &quick_opts()).unwrap();
        let keys: Vec<&str> = report.seasons.iter().map(|r| r.season.as_str()).collect();
        assert_eq!(keys, ["2010", "2009"]);
        let bad = ["1900".to_string()];
        assert!(matches!(season_report(&recs, &bad, &mut store, &quick_opts()), Err(Error::UnknownSeason(_))));
    }

    #[test]
    fn renaming_teams_changes_nothing() {
        let g = example_graph();
        let a = records_for("1", &g, &["a", "b", "c", "d"]);
        let b = records_for("1", &g, &["zeta", "eta", "theta", "alpha"]);
        let opts = quick_opts();
        let mut store = ModelStore::in_memory();
        let ra = season_report(&a, &[], &mut store, &opts).unwrap();
        let rb = season_report(&b, &[], &mut store, &opts).unwrap();
        assert_eq!(ra.seasons, rb.seasons);
    }

    #[test]
    fn large_seasons_skip_edge_measure_and_missing_models_error() {
        let g = Digraph::complete_dominance(10).unwrap();
        let names: Vec<String> = (0..10).map(|i| format!("t{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let recs = records_for("2001", &g, &names);
        let mut store = ModelStore::in_memory();
        let no_train = ReportOptions { auto_train: false, ..quick_opts() };
        assert!(matches!(season_report(&recs, &[], &mut store, &no_train), Err(Error::ModelMissing(10))));
        let r = season_report(&recs, &[], &mut store, &quick_opts()).unwrap();
        let s = &r.seasons[0];
        assert!(s.re_skipped_too_large && s.r_e.is_none());
        assert!((s.r_s - 1.0).abs() < 1e-9);
        assert!(r.seasons_csv().unwrap().contains("2001,10,,"));
        // a model is now cached, so auto-training is no longer needed
        assert!(season_report(&recs, &[], &mut store, &no_train).is_ok());
    }

    #[test]
    fn writes_report_and_reloads_models() {
        let dir = tempfile::tempdir().unwrap();
        let mut recs = Vec::new();
        for (k, g) in [Digraph::complete_dominance(5).unwrap(), example_graph(), Digraph::cycle(5).unwrap()].iter().enumerate() {
            recs.extend(records_for(&format!("200{k}"), g, &["a", "b", "c", "d", "e"][..g.n()]));
        }
        let models = dir.path().join("models");
        let mut store = ModelStore::open(&models).unwrap();
        let report = season_report(&recs, &[], &mut store, &quick_opts()).unwrap();
        assert_eq!(report.measures, vec!["R_e", "R_s", "R_f"]);
        let out = dir.path().join("report");
        report.write_dir(&out).unwrap();
        for f in ["seasons.csv", "correlations.csv", "timeseries.svg", "scatter_matrix.svg"] {
            assert!(out.join(f).is_file(), "{f}");
        }
        let text = fs::read_to_string(out.join("seasons.csv")).unwrap();
        assert!(text.starts_with("season,n_teams,r_e,r_s,r_f\n2000,5,1,1,"));

        let reopened = ModelStore::open(&models).unwrap();
        assert_eq!(reopened.sizes(), vec![4, 5]);
        assert_eq!(reopened.get(5), store.get(5));
    }
}
