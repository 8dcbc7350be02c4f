//! Dense matchings in graphs with independence number at most 2.
//!
//! The [`extractor`] finds a matching of size `t` whose edges are pairwise
//! adjacent except for a small number of pairs, by conditioning a uniform
//! random pairing of the vertices on containing many edges and selecting
//! `t` of those edges uniformly. The [`oracles`] compute the exact
//! quantities involved (connected matching number, clique number, bad
//! quadruples, optimal matchings) on small graphs, and the [`harness`]
//! runs parameter sweeps against the closed-form bound.

mod bits;
pub mod error;
pub mod extractor;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod sampling;

pub use error::{Error, Result};
pub use extractor::{
    derive_params, extract_best, extract_once, optimal_ell, ExtractOptions, Extraction,
    ExtractionParams, TrialReport,
};
pub use graph::{Graph, Matching, VertexId};
pub use sampling::{Partition, SeededRng};
