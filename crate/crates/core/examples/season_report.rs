//! Rankability of each season of a league, from a plain results CSV.
//! Without an argument a small made-up league is simulated.
//!
//!     cargo run --release --example season_report -- [matches.csv]

use std::fmt::Write as _;

use rand::Rng;
use rankability::ingest::{parse_matches, parse_matches_from, season_report, ModelStore, ReportOptions, MATCH_HEADER};
use rankability::{rng, Result};

fn main() -> Result<()> {
    let records = match std::env::args().nth(1) {
        Some(path) => parse_matches(path)?,
        None => parse_matches_from(simulated_league(12).as_bytes(), "simulated".as_ref())?,
    };
    run(records, 1000)
}

pub fn run(records: Vec<rankability::ingest::MatchRecord>, train_count: usize) -> Result<()> {
    let mut store = ModelStore::in_memory();
    let opts = ReportOptions { train_count, ..ReportOptions::default() };
    let report = season_report(&records, &[], &mut store, &opts)?;
    print!("{}", report.seasons_csv()?);
    println!();
    print!("{}", report.correlations_csv());
    Ok(())
}

/// Seasons where the gap between strong and weak clubs keeps growing.
pub fn simulated_league(seasons: usize) -> String {
    let mut r = rng::stream(5, 0);
    let mut out = format!("{MATCH_HEADER}\n");
    for s in 0..seasons {
        let n = 6 + s % 3;
        let spread = 0.2 + s as f64 / seasons as f64;
        let strength: Vec<f64> = (0..n).map(|i| spread * i as f64 / n as f64).collect();
        for i in 0..n {
            for j in i + 1..n {
                let goals = |r: &mut rng::Rng64, a: f64| (r.random::<f64>() * 3.0 * (1.0 + a)) as u32;
                let (ga, gb) = (goals(&mut r, strength[i]), goals(&mut r, strength[j]));
                writeln!(out, "{},Club {i},Club {j},{ga},{gb}", 2000 + s).unwrap();
            }
        }
    }
    out
}
