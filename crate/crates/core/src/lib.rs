//! Rankability of directed graphs.
//!
//! Three measures are provided:
//!
//! - [`edge`]: edit distance to the nearest complete dominance graph, and
//!   the number of dominance graphs at that distance;
//! - [`spectral`]: Hausdorff distance between Laplacian and out-degree
//!   spectra and those of a complete dominance graph;
//! - [`forest`]: a random-forest regressor over cheap graph [`features`],
//!   trained on synthetic graphs with a known target rankability
//!   ([`synth`]).
//!
//! [`eval`] scores measures against labels with Spearman correlation, and
//! [`ingest`] turns season match results into per-season reports.

pub mod edge;
pub mod eigen;
pub mod error;
pub mod eval;
pub mod features;
pub mod forest;
pub mod graph;
pub mod ingest;
pub mod plot;
pub mod rng;
pub mod spectral;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{Digraph, LabelTable, VertexOrdering};
