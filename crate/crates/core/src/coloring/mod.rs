//! Uniform random colorings, the monochromatic star statistic `T`, and the
//! reproducible Monte-Carlo engine.

mod empirical;
mod engine;
mod eval;

pub use empirical::{empirical_moments, EmpiricalDist};
pub use engine::{
    monte_carlo, monte_carlo_with, parallel_histogram, sample_stream, McConfig, SampleRng,
    DEFAULT_MC_BUDGET,
};
pub use eval::{eval_t, sample_coloring, Coloring, EvalScratch, StarEvaluator};
