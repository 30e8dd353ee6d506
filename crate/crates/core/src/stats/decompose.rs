//! Splitting a graph around its `ε`-big vertices (degree `>= ε·c`).
//!
//! Big–big edges are removed; `g_plus` keeps the edges with exactly one big
//! endpoint and `g_minus` the edges with none. Both subgraphs live on the
//! vertex ids of the original graph (vertices outside their vertex set are
//! isolated).

use num_bigint::BigUint;
use serde::Serialize;

use super::stars::count_stars;
use crate::graph::Graph;
use crate::math::binom_big;

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub epsilon: f64,
    pub colors: u64,
    pub big_vertices: Vec<u32>,
    /// `is_big[v]` for every vertex of the original graph.
    pub is_big: Vec<bool>,
    pub g_plus: Graph,
    pub g_minus: Graph,
    pub removed_big_big_edges: Vec<(u32, u32)>,
    /// Degrees in the original graph.
    pub degrees: Vec<usize>,
}

/// Vertices with `d_v >= eps·c` (closed threshold).
pub fn epsilon_big(g: &Graph, c: u64, eps: f64) -> Vec<u32> {
    assert!(eps > 0.0 && c >= 1, "need eps > 0 and c >= 1");
    let threshold = eps * c as f64;
    (0..g.vertex_count())
        .filter(|&v| g.degree(v) as f64 >= threshold)
        .map(|v| v as u32)
        .collect()
}

pub fn decompose(g: &Graph, c: u64, eps: f64) -> Decomposition {
    let big_vertices = epsilon_big(g, c, eps);
    let mut is_big = vec![false; g.vertex_count()];
    for &v in &big_vertices {
        is_big[v as usize] = true;
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut removed = Vec::new();
    for (u, v) in g.edges() {
        match (is_big[u as usize], is_big[v as usize]) {
            (true, true) => removed.push((u, v)),
            (false, false) => minus.push((u, v)),
            _ => plus.push((u, v)),
        }
    }
    let n = g.vertex_count();
    Decomposition {
        epsilon: eps,
        colors: c,
        big_vertices,
        is_big,
        g_plus: Graph::from_edges(n, plus).expect("subgraph"),
        g_minus: Graph::from_edges(n, minus).expect("subgraph"),
        removed_big_big_edges: removed,
        degrees: g.degrees(),
    }
}

/// Exact split of `N(K_{1,r}, G)` along a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarAccounting {
    /// Stars centered at big vertices using only `g_plus` edges.
    #[serde(serialize_with = "crate::math::serialize_decimal")]
    pub centered_big: BigUint,
    /// Stars of `g_minus`.
    #[serde(serialize_with = "crate::math::serialize_decimal")]
    pub minus: BigUint,
    /// Stars centered at a non-big vertex with at least one big leaf (the
    /// remainder term).
    #[serde(serialize_with = "crate::math::serialize_decimal")]
    pub cross: BigUint,
    /// Stars centered at a big vertex that use a removed big–big edge.
    #[serde(serialize_with = "crate::math::serialize_decimal")]
    pub big_big: BigUint,
}

impl StarAccounting {
    pub fn total(&self) -> BigUint {
        &self.centered_big + &self.minus + &self.cross + &self.big_big
    }
}

pub fn star_accounting(g: &Graph, dec: &Decomposition, r: u32) -> StarAccounting {
    let r64 = u64::from(r);
    let mut acc = StarAccounting {
        centered_big: BigUint::default(),
        minus: count_stars(&dec.g_minus, r),
        cross: BigUint::default(),
        big_big: BigUint::default(),
    };
    for v in 0..g.vertex_count() {
        let full = binom_big(g.degree(v) as u64, r64);
        if dec.is_big[v] {
            let plus = binom_big(dec.g_plus.degree(v) as u64, r64);
            acc.big_big += &full - &plus;
            acc.centered_big += plus;
        } else {
            acc.cross += full - binom_big(dec.g_minus.degree(v) as u64, r64);
        }
    }
    acc
}

/// Upper bound `(ε c)^{r-1} c^{-r} Σ_{u big} d_u` on the expected remainder.
pub fn remainder_mean_bound(dec: &Decomposition, r: u32, c: u64) -> f64 {
    let degree_mass: usize = dec
        .big_vertices
        .iter()
        .map(|&u| dec.degrees[u as usize])
        .sum();
    if degree_mass == 0 {
        return 0.0;
    }
    let c = c as f64;
    let r = r as i32;
    (dec.epsilon * c).powi(r - 1) * c.powi(-r) * degree_mass as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn g(s: &str) -> Graph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    fn check_partition(gr: &Graph, dec: &Decomposition) {
        let mut all: Vec<(u32, u32)> = dec
            .g_plus
            .edges()
            .chain(dec.g_minus.edges())
            .chain(dec.removed_big_big_edges.iter().copied())
            .collect();
        all.sort_unstable();
        let total = all.len();
        all.dedup();
        assert_eq!(all.len(), total, "parts overlap");
        assert_eq!(all, gr.edges().collect::<Vec<_>>());
        for (u, v) in dec.g_plus.edges() {
            assert_ne!(
                dec.is_big[u as usize], dec.is_big[v as usize],
                "g_plus not bipartite"
            );
        }
    }

    #[test]
    fn star_hub_is_the_only_big_vertex() {
        assert_eq!(epsilon_big(&g("star:100"), 100, 0.5), vec![0]);
        assert!(epsilon_big(&g("cycle:10"), 100, 0.5).is_empty());
        assert_eq!(epsilon_big(&g("figure2:100"), 100, 0.5), vec![0]);
    }

    #[test]
    fn threshold_is_closed() {
        // d = 50 = 0.5 * 100 counts as big.
        assert_eq!(epsilon_big(&g("star:50"), 100, 0.5), vec![0]);
    }

    #[test]
    fn no_big_vertices_keeps_everything_in_minus() {
        let gr = g("cycle:10");
        let dec = decompose(&gr, 100, 0.5);
        assert_eq!(dec.g_minus, gr);
        assert_eq!(dec.g_plus.edge_count(), 0);
        assert!(dec.removed_big_big_edges.is_empty());
        assert_eq!(remainder_mean_bound(&dec, 2, 100), 0.0);
    }

    #[test]
    fn big_big_edge_is_removed() {
        let gr = g("complete:2");
        let dec = decompose(&gr, 1, 0.5);
        assert_eq!(dec.removed_big_big_edges, vec![(0, 1)]);
        check_partition(&gr, &dec);
    }

    #[test]
    fn figure2_splits_off_the_hub_star() {
        let gr = g("figure2:100");
        let dec = decompose(&gr, 100, 0.5);
        assert_eq!(
            dec.g_plus,
            g("star:100")
                .disjoint_union(&Graph::empty(gr.vertex_count() - 101).unwrap())
                .unwrap()
        );
        assert_eq!(dec.g_minus.edge_count(), gr.edge_count() - 100);
        assert_eq!(dec.g_minus.degree(0), 0);
        check_partition(&gr, &dec);
        let acc = star_accounting(&gr, &dec, 2);
        assert_eq!(acc.total(), count_stars(&gr, 2));
        assert_eq!(acc.centered_big, BigUint::from(4950u32));
        // Only leaf 1 carries a second edge, so only it centers cross stars.
        assert_eq!(acc.cross, BigUint::from(1u32));
    }

    #[test]
    fn remainder_bound_on_a_star() {
        let n = 200;
        let dec = decompose(&g(&format!("star:{n}")), n, 0.5);
        assert!((remainder_mean_bound(&dec, 2, n) - 0.5).abs() < 1e-12);
        assert!((remainder_mean_bound(&dec, 3, n) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn partition_and_accounting_on_random_graphs() {
        for seed in 0..20 {
            let gr = g(&format!("er:40:0.2:seed={seed}"));
            for (c, eps) in [(10, 0.5), (20, 0.3), (8, 1.0)] {
                let dec = decompose(&gr, c, eps);
                check_partition(&gr, &dec);
                for r in 1..=3 {
                    let acc = star_accounting(&gr, &dec, r);
                    assert_eq!(acc.total(), count_stars(&gr, r));
                    let exact_mean =
                        acc.cross.to_string().parse::<f64>().unwrap() / (c as f64).powi(r as i32);
                    assert!(exact_mean <= remainder_mean_bound(&dec, r, c) + 1e-12);
                }
            }
        }
    }
}
