use num_bigint::BigUint;

use crate::graph::Graph;
use crate::math::{binom_big, binom_u128};

/// `N(K_{1,r}, G) = Σ_v C(d_v, r)`.
pub fn count_stars(g: &Graph, r: u32) -> BigUint {
    assert!(r >= 1, "r must be at least 1");
    let mut total = BigUint::default();
    let mut small: u128 = 0;
    for v in 0..g.vertex_count() {
        let d = g.degree(v) as u64;
        match binom_u128(d, r.into()).and_then(|x| small.checked_add(x)) {
            Some(s) => small = s,
            None => total += binom_big(d, r.into()),
        }
    }
    total + small
}

/// [`count_stars`] when the count fits in `u128`.
pub fn count_stars_u128(g: &Graph, r: u32) -> Option<u128> {
    (0..g.vertex_count()).try_fold(0u128, |acc, v| {
        acc.checked_add(binom_u128(g.degree(v) as u64, r.into())?)
    })
}

/// Drops every edge whose endpoints both have degree `< r`. Such edges lie on
/// no `r`-star, so the star count (and the law of `T`) is unchanged.
pub fn prune_for_stars(g: &Graph, r: u32) -> Graph {
    let r = r as usize;
    let kept = g
        .edges()
        .filter(|&(u, v)| g.degree(u as usize).max(g.degree(v as usize)) >= r);
    Graph::from_edges(g.vertex_count(), kept).expect("subgraph of a simple graph")
}
