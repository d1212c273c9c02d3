use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use rankability::edge::{edge_rankability_with, SearchOptions};
use rankability::eval::{plot_scatter_csv, run_experiment, CorrelationTable, ExperimentConfig, Protocol};
use rankability::features::{feature_vector, FEATURE_NAMES};
use rankability::forest::{fit_graphs, RandomForestModel, TrainConfig};
use rankability::ingest::{parse_matches, season_report, ModelStore, ReportOptions};
use rankability::spectral::spectral_report;
use rankability::synth::{gen_dataset, read_dataset, write_dataset, DatasetConfig, GeneratorId};
use rankability::{Digraph, Error, Result};

#[derive(Parser)]
#[command(name = "rankability", version, about = "Rankability measures for directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact edge or spectral rankability of one graph.
    #[command(subcommand)]
    Rank(RankCommand),
    /// Generate a labelled synthetic dataset.
    Gen(GenArgs),
    /// Feature vector of a graph, or a CSV of features for a dataset.
    Features(FeaturesArgs),
    /// Train a random-forest model on a dataset directory.
    Train(TrainArgs),
    /// Forest rankability of one graph.
    Predict(PredictArgs),
    /// Spearman correlation table for a synthetic experiment.
    Experiment(ExperimentArgs),
    /// Render a scatter CSV as SVG.
    Plot(PlotArgs),
    /// Per-season report from a match-results CSV.
    Ingest(IngestArgs),
}

#[derive(Subcommand)]
enum RankCommand {
    Edge {
        #[arg(long)]
        graph_file: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Give up after this many seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(long)]
        list_minimizers: bool,
    },
    Spectral {
        #[arg(long)]
        graph_file: PathBuf,
        #[arg(long)]
        report_spectra: bool,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    model: GeneratorId,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FeaturesArgs {
    #[arg(long, conflicts_with = "dir")]
    graph_file: Option<PathBuf>,
    #[arg(long, requires = "out")]
    dir: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 100)]
    trees: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    graph_file: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// 1: target rankability; 2: Elo relative rankability.
    #[arg(long)]
    table: Protocol,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sparse: bool,
    #[arg(long, default_value_t = 1000)]
    train_count: usize,
    #[arg(long, default_value_t = 1000)]
    test_count: usize,
    #[arg(long)]
    out: PathBuf,
    /// Scatter dataset path; defaults to `<out>` with a `.scatter.csv` suffix.
    #[arg(long)]
    scatter: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    matches: PathBuf,
    #[arg(long)]
    models: PathBuf,
    #[arg(long, overrides_with = "no_auto_train")]
    auto_train: bool,
    #[arg(long)]
    no_auto_train: bool,
    #[arg(long, default_value_t = 8)]
    re_max_n: usize,
    /// Season keys in report order, one per line; default is key order.
    #[arg(long)]
    order: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error ({}): {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Rank(RankCommand::Edge { graph_file, max_n, time_budget, list_minimizers }) => {
            let g = Digraph::load(graph_file)?;
            let opts = SearchOptions {
                max_n,
                time_budget: time_budget.map(Duration::from_secs_f64),
                collect_minimizers: list_minimizers,
                ..SearchOptions::default()
            };
            let (kp, r) = edge_rankability_with(&g, &opts)?;
            println!("k = {}\np = {}\nR_e = {r}", kp.k, kp.p);
            for o in kp.minimizers.iter().flatten() {
                println!("{o}");
            }
        }
        Command::Rank(RankCommand::Spectral { graph_file, report_spectra }) => {
            let g = Digraph::load(graph_file)?;
            let rep = spectral_report(&g)?;
            println!("R_s = {}", rep.value);
            if report_spectra {
                let show = |name: &str, s: &rankability::eigen::ComplexSpectrum| {
                    let parts: Vec<String> = s.sorted().iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
                    println!("{name} = [{}]", parts.join(", "));
                };
                show("sigma(D)", &rep.degree_spectrum);
                show("sigma(L)", &rep.laplacian_spectrum);
                show("sigma(S)", &rep.benchmark_spectrum);
                println!("hd(D,S) = {}\nhd(L,S) = {}", rep.hd_degree, rep.hd_laplacian);
            }
        }
        Command::Gen(a) => {
            let samples = gen_dataset(&DatasetConfig::new(a.model, a.n, a.count, a.seed))?;
            write_dataset(&a.out, &samples)?;
            eprintln!("wrote {} graphs to {}", samples.len(), a.out.display());
        }
        Command::Features(a) => match (a.graph_file, a.dir) {
            (Some(f), _) => {
                let fv = feature_vector(&Digraph::load(f)?)?.to_array();
                for (name, v) in FEATURE_NAMES.iter().zip(fv) {
                    println!("{name} = {v}");
                }
            }
            (None, Some(dir)) => {
                let out = a.out.expect("clap requires --out with --dir");
                let mut w = csv::Writer::from_path(&out)?;
                let mut head = vec!["id"];
                head.extend(FEATURE_NAMES);
                head.push("label");
                w.write_record(&head)?;
                for (row, g) in read_dataset(&dir)? {
                    let mut rec = vec![row.id.clone()];
                    rec.extend(feature_vector(&g)?.to_array().iter().map(f64::to_string));
                    rec.push(row.label.to_string());
                    w.write_record(&rec)?;
                }
                w.flush()?;
            }
            (None, None) => return Err(Error::InvalidConfig("give --graph-file or --dir".into())),
        },
        Command::Train(a) => {
            let (labels, graphs): (Vec<f64>, Vec<Digraph>) =
                read_dataset(&a.data)?.into_iter().map(|(r, g)| (r.label, g)).unzip();
            let cfg = TrainConfig { n_trees: a.trees, seed: a.seed, ..TrainConfig::default() };
            let model = fit_graphs(&graphs, &labels, &cfg)?;
            model.save(&a.out)?;
            eprintln!("trained {} trees on {} graphs (n = {})", model.n_trees(), graphs.len(), model.trained_n());
        }
        Command::Predict(a) => {
            let model = RandomForestModel::load(a.model)?;
            println!("R_f = {}", model.rankability(&Digraph::load(a.graph_file)?)?);
        }
        Command::Experiment(a) => {
            let mut cfg = ExperimentConfig::for_protocol(a.table, a.n, a.sparse, a.seed);
            cfg.train_count = a.train_count;
            cfg.test_count = a.test_count;
            let result = run_experiment(&cfg)?;
            let mut table = CorrelationTable::new();
            table.add_result(&result);
            table.write_csv(&a.out)?;
            let scatter = a.scatter.unwrap_or_else(|| with_suffix(&a.out, ".scatter.csv"));
            result.write_scatter_csv(&scatter)?;
            print!("{table}");
        }
        Command::Plot(a) => {
            std::fs::write(&a.out, plot_scatter_csv(&a.input)?)?;
        }
        Command::Ingest(a) => {
            let records = parse_matches(&a.matches)?;
            let mut store = ModelStore::open(&a.models)?;
            let opts = ReportOptions { re_max_n: a.re_max_n, auto_train: !a.no_auto_train, seed: a.seed, ..Default::default() };
            let order = match a.order {
                Some(path) => std::fs::read_to_string(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect(),
                None => Vec::new(),
            };
            let report = season_report(&records, &order, &mut store, &opts)?;
            report.write_dir(&a.out)?;
            print!("{}", report.seasons_csv()?);
        }
    }
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(|| "table".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}{suffix}"))
}
