//! Monochromatic `r`-star statistics of uniformly colored graphs.
//!
//! A graph `G` is colored by giving every vertex an independent uniform color
//! out of `c`. The statistic of interest is `T(K_{1,r}, G)`, the number of
//! monochromatic `r`-stars. This crate provides:
//!
//! - [`graph`]: an immutable CSR graph, edge-list I/O and deterministic
//!   generators for the test families;
//! - [`stats`]: exact star counts, the induced `(r+1)`-vertex class counts,
//!   the big-vertex decomposition and the `β(H)` joint-indicator expectation;
//! - [`coloring`]: uniform colorings, a linear-time evaluator of `T` and a
//!   reproducible parallel Monte-Carlo engine;
//! - [`oracle`]: the exact distribution of `T` by enumerating colorings;
//! - [`limit`]: the compound-Poisson limit law (parameters, pmf, sampling);
//! - [`harness`]: distances, experiments, built-in examples and reports.

pub mod coloring;
pub mod error;
pub mod graph;
pub mod harness;
pub mod limit;
pub mod math;
pub mod oracle;
pub mod pmf;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{GeneratorSpec, Graph};
