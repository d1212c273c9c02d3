// Each example is compiled in here as a module so `cargo test` keeps them honest.

#[allow(dead_code)]
#[path = "../examples/edge_rankability.rs"]
mod edge_rankability;
#[allow(dead_code)]
#[path = "../examples/spectral_rankability.rs"]
mod spectral_rankability;
#[allow(dead_code)]
#[path = "../examples/synthetic_graphs.rs"]
mod synthetic_graphs;
#[allow(dead_code)]
#[path = "../examples/graph_features.rs"]
mod graph_features;
#[allow(dead_code)]
#[path = "../examples/forest_model.rs"]
mod forest_model;
#[allow(dead_code)]
#[path = "../examples/target_correlations.rs"]
mod target_correlations;
#[allow(dead_code)]
#[path = "../examples/relative_correlations.rs"]
mod relative_correlations;
#[allow(dead_code)]
#[path = "../examples/season_report.rs"]
mod season_report;

use rankability::eval::{Column, Measure};

#[test]
fn measure_examples_run() {
    edge_rankability::run().unwrap();
    spectral_rankability::run().unwrap();
    graph_features::run().unwrap();
}

#[test]
fn synthetic_dataset_example_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    synthetic_graphs::run(Some(&dir.path().join("data"))).unwrap();
    assert!(dir.path().join("data/labels.csv").is_file());
}

#[test]
fn forest_example_runs() {
    forest_model::run(150).unwrap();
}

#[test]
fn correlation_examples_fill_their_tables() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("scatter.svg");
    let t = target_correlations::run(&[8], 120, Some(&svg)).unwrap();
    assert!(svg.is_file());
    let c8 = Column { n: 8, sparse: false };
    assert!(t.get(Measure::Edge, c8).unwrap() > 0.3);
    assert!(t.get(Measure::Forest, Column { n: 8, sparse: true }).is_some());

    let t = relative_correlations::run(&[8], 120).unwrap();
    assert!(t.get(Measure::Spectral, c8).is_some());
}

#[test]
fn season_example_runs_on_simulated_league() {
    let csv = season_report::simulated_league(4);
    let records = rankability::ingest::parse_matches_from(csv.as_bytes(), "sim".as_ref()).unwrap();
    season_report::run(records, 100).unwrap();
}
