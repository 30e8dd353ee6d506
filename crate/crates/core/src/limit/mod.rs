//! The compound-Poisson limit law of `T(K_{1,r}, G_n)`.
//!
//! The limit is `Σ_v C(T_v, r) + Σ_k k·Z_k` with independent
//! `T_v ~ Pois(θ_v)`, `Z_1 ~ Pois(λ_1 − Σ_v θ_v^r / r!)` and
//! `Z_k ~ Pois(λ_k)` for `2 ≤ k ≤ r+1`.

mod law;
mod params;

pub use law::{
    limit_moments, limit_pmf, pgf_linear, poisson_pmf, pushforward_pmf, sample_limit, sample_limit_many,
};
pub use params::{
    figure2_literal_params, figure2_params, params_from_graph, params_from_graph_with, parse_params, plug_in_params,
    validate_params, LimitLawParams, PlugInParams, DEFAULT_THETA_THRESHOLD, PARAM_SLACK,
};
