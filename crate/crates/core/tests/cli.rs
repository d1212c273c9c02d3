use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankability")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rank_commands_on_example_graph() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.txt"), "# four teams\n4\n0 1 1 1\n0 0 0 0\n0 1 0 0\n0 1 0 0\n").unwrap();

    let o = run(&["rank", "edge", "--graph-file", "g.txt", "--list-minimizers"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("k = 1") && text.contains("p = 2"));
    assert!(text.contains("(0,2,3,1)") && text.contains("(0,3,2,1)"));

    let o = run(&["rank", "spectral", "--graph-file", "g.txt", "--report-spectra"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("R_s = 0.666666666666666"));
    assert!(text.contains("hd(D,S) = 1"));
}

#[test]
fn gen_train_predict_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(&["gen", "--model", "target", "--n", "6", "--count", "40", "--seed", "2", "--out", "data"], d).status.success());
    let labels = std::fs::read_to_string(d.join("data/labels.csv")).unwrap();
    assert!(labels.starts_with("id,label,p,c,generator\n"));
    assert_eq!(labels.lines().count(), 41);

    assert!(run(&["features", "--dir", "data", "--out", "f.csv"], d).status.success());
    let f = std::fs::read_to_string(d.join("f.csv")).unwrap();
    assert!(f.starts_with("id,triangles,contradictions,out_degree_std,algebraic_connectivity,draws,label"));

    assert!(run(&["train", "--data", "data", "--out", "m.rf", "--trees", "15", "--seed", "1"], d).status.success());
    let o = run(&["predict", "--model", "m.rf", "--graph-file", "data/00003.txt"], d);
    assert!(o.status.success());
    let v: f64 = stdout(&o).trim().strip_prefix("R_f = ").unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&v));
}

#[test]
fn experiment_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(
        &["experiment", "--table", "1", "--n", "6", "--seed", "3", "--train-count", "80", "--test-count", "60", "--out", "t.csv"],
        d,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(d.join("t.csv")).unwrap();
    assert!(table.starts_with("measure,complete n=6\nR_e,"));
    assert!(d.join("t.scatter.csv").is_file());
    assert!(run(&["plot", "--in", "t.scatter.csv", "--out", "fig.svg"], d).status.success());
    assert!(std::fs::read_to_string(d.join("fig.svg")).unwrap().contains("<circle"));
}

#[test]
fn ingest_with_and_without_models() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let games = "season,team_a,team_b,score_a,score_b\n\
                 2001,A,B,2,0\n2001,B,C,1,0\n2001,A,C,3,3\n\
                 2002,A,B,0,1\n2002,B,C,1,0\n2002,C,A,1,0\n";
    std::fs::write(d.join("games.csv"), games).unwrap();
    let o = run(&["ingest", "--matches", "games.csv", "--models", "models", "--no-auto-train", "--out", "r"], d);
    assert_eq!(o.status.code(), Some(6), "missing model is a model error");

    let o = run(&["ingest", "--matches", "games.csv", "--models", "models", "--auto-train", "--out", "r"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let seasons = std::fs::read_to_string(d.join("r/seasons.csv")).unwrap();
    assert!(seasons.starts_with("season,n_teams,r_e,r_s,r_f\n2001,3,"));
    assert!(d.join("models/rf_n3.json").is_file());
    // the cached model now satisfies --no-auto-train
    let o = run(&["ingest", "--matches", "games.csv", "--models", "models", "--no-auto-train", "--out", "r2"], d);
    assert!(o.status.success());

    std::fs::write(d.join("order.txt"), "2002\n2001\n").unwrap();
    let o = run(&["ingest", "--matches", "games.csv", "--models", "models", "--order", "order.txt", "--out", "r3"], d);
    assert!(o.status.success());
    let seasons = std::fs::read_to_string(d.join("r3/seasons.csv")).unwrap();
    assert!(seasons.lines().nth(1).unwrap().starts_with("2002,"));
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.txt"), "3\n0 1 0\n0 1 0\n0 0 0\n").unwrap();
    let o = run(&["rank", "edge", "--graph-file", "bad.txt"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error (input)"));

    std::fs::write(d.join("big.txt"), format!("14\n{}", "0 0 0 0 0 0 0 0 0 0 0 0 0 0\n".repeat(14))).unwrap();
    let o = run(&["rank", "edge", "--graph-file", "big.txt"], d);
    assert_eq!(o.status.code(), Some(3));

    std::fs::write(d.join("games.csv"), "season,team_a,team_b,score_a,score_b\n2007,Arsenal,Arsenal,1,0\n").unwrap();
    let o = run(&["ingest", "--matches", "games.csv", "--models", "m", "--out", "r"], d);
    assert_eq!(o.status.code(), Some(7));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = run(&["rank", "edge", "--graph-file", "missing.txt"], d);
    assert_eq!(o.status.code(), Some(1));
}
