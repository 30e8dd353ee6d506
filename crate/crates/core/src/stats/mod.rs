//! Exact combinatorial statistics: star counts, induced class counts, the
//! big-vertex decomposition and the joint-indicator expectation `β(H)`.

mod beta;
mod classes;
mod decompose;
mod stars;

pub use beta::{beta, beta_of_edges};
pub use classes::{
    class_counts, class_counts_by_cliques, class_counts_with, ClassCountMethod, ClassCountOptions,
    StarClassCounts, DEFAULT_CLASS_BUDGET,
};
pub use decompose::{
    decompose, epsilon_big, remainder_mean_bound, star_accounting, Decomposition, StarAccounting,
};
pub use stars::{count_stars, count_stars_u128, prune_for_stars};
