//! Power-law background models for graph degree distributions.
//!
//! The pipeline has three steps:
//!
//! 1. Build the adjacency matrix (from an incidence matrix or an edge list),
//!    take its in- or out-degree distribution, and estimate the exponent
//!    `α = ln n(d_1) / ln d_max` ([`model::estimate_alpha`]).
//! 2. Search for a "perfect" power-law distribution with that exponent whose
//!    vertex and edge totals match the observed ones
//!    ([`model::fit_perfect_power_law`]).
//! 3. Rebin the observed distribution onto the model's bins and compare them
//!    bin by bin ([`rebin::rebin`], [`rebin::compare`]). Vertices sitting in
//!    bins far above the model are candidates for filtering
//!    ([`rebin::filter_high_degree`]).
//!
//! [`pipeline::analyze`] runs all three steps.

pub mod cli;
pub mod degree;
pub mod error;
pub mod io;
pub mod matrix;
pub mod model;
pub mod pipeline;
pub mod rebin;
pub mod svg;
pub mod synth;

pub use degree::{degree_distribution, degree_vector, DegreeDistribution, Direction, Summary};
pub use error::{Error, Result};
pub use matrix::{
    adjacency_from_edge_list, incidence_to_adjacency, AdjacencyMatrix, IncidenceMatrix,
    VertexDictionary,
};
pub use model::{
    estimate_alpha, fit_perfect_power_law, objective, FitConfig, FitOutcome, Optimizer,
    PowerLawModel,
};
pub use pipeline::{analyze, analyze_degrees, Analysis, AnalysisConfig};
pub use rebin::{
    compare, filter_high_degree, rebin, FitReport, RebinnedDistribution, Thresholds, Verdict,
};
pub use synth::{sample_degrees, sample_graph, GeneratorKind, GeneratorSpec};
