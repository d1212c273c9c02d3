use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("adjacency matrix is not square (row {row} has {len} entries, expected {n})")]
    NonSquare { row: usize, len: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("entry ({row}, {col}) = {value} is not 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: i64 },

    #[error("need at least {min} vertices, got {got}")]
    TooSmall { min: usize, got: usize },

    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{what}: n = {n} exceeds the limit of {max}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("search exceeded its time budget of {0:?}")]
    Timeout(std::time::Duration),

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    BadProbability { name: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("model was trained on {trained} vertices but the graph has {got}")]
    VertexCountMismatch { trained: usize, got: usize },

    #[error("model schema version {found} is not supported (expected {expected})")]
    SchemaVersionMismatch { found: u64, expected: u64 },

    #[error("corrupt model file: {0}")]
    CorruptModel(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("{path}: line {line}: {reason}")]
    MalformedRow { path: PathBuf, line: u64, reason: String },

    #[error("{path}: missing or wrong header (expected `{expected}`)")]
    MissingHeader { path: PathBuf, expected: &'static str },

    #[error("graph file: {0}")]
    GraphFormat(String),

    #[error("season {season:?} has {teams} team(s); at least 2 are required")]
    TooFewTeams { season: String, teams: usize },

    #[error("unknown season {0:?}")]
    UnknownSeason(String),

    #[error("no trained model for {0} vertices and auto-training is disabled")]
    ModelMissing(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Coarse category used by the CLI for exit codes and messages.
    pub fn category(&self) -> &'static str {
        match self {
            Error::NonSquare { .. }
            | Error::SelfLoop(_)
            | Error::NonBinaryEntry { .. }
            | Error::TooSmall { .. }
            | Error::IndexOutOfRange { .. }
            | Error::LengthMismatch { .. }
            | Error::GraphFormat(_) => "input",
            Error::TooLarge { .. } | Error::Timeout(_) => "limit",
            Error::NoConvergence(_) | Error::EmptySpectrum | Error::DegenerateInput(_) => "numeric",
            Error::BadProbability { .. } | Error::InvalidConfig(_) => "config",
            Error::EmptyTrainingSet
            | Error::VertexCountMismatch { .. }
            | Error::SchemaVersionMismatch { .. }
            | Error::CorruptModel(_)
            | Error::ModelMissing(_) => "model",
            Error::MalformedRow { .. }
            | Error::MissingHeader { .. }
            | Error::TooFewTeams { .. }
            | Error::UnknownSeason(_)
            | Error::Csv(_) => "data",
            Error::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "input" => 2,
            "limit" => 3,
            "numeric" => 4,
            "config" => 5,
            "model" => 6,
            "data" => 7,
            _ => 1,
        }
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::BadProbability { name, value, lo, hi })
    }
}
