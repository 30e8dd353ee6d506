use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::graph::Graph;

/// `β(H) = c^{-(|V(H)| - ν(H)})`, the probability that every edge of `H` is
/// monochromatic. Isolated vertices are their own components and do not
/// change the value.
pub fn beta(h: &Graph, c: u64) -> BigRational {
    assert!(c >= 1, "c must be at least 1");
    let (_, components) = h.components();
    let rank = (h.vertex_count() - components) as u32;
    BigRational::new(BigInt::one(), BigInt::from(c).pow(rank))
}

/// `β` of the graph formed by `edges` over the vertex ids `0..n`.
pub fn beta_of_edges(n: usize, edges: &[(u32, u32)], c: u64) -> BigRational {
    beta(
        &Graph::from_edges(n, edges.iter().copied()).expect("simple edge set"),
        c,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(beta_of_edges(2, &[(0, 1)], 3), ratio(1, 3));
        assert_eq!(beta_of_edges(4, &[(0, 1), (2, 3)], 3), ratio(1, 9));
        let k3 = generate(&GeneratorSpec::Complete { n: 3 }).unwrap();
        assert_eq!(beta(&k3, 2), ratio(1, 4));
        assert_eq!(beta(&Graph::empty(5).unwrap(), 7), ratio(1, 1));
    }

    /// Probability that all edges are monochromatic, by enumerating colorings.
    fn beta_by_enumeration(n: usize, edges: &[(u32, u32)], c: u64) -> BigRational {
        let total = c.pow(n as u32);
        let mut hits = 0u64;
        let mut col = vec![0u64; n];
        for code in 0..total {
            let mut x = code;
            for slot in col.iter_mut() {
                *slot = x % c;
                x /= c;
            }
            hits += edges
                .iter()
                .all(|&(u, v)| col[u as usize] == col[v as usize]) as u64;
        }
        BigRational::new(hits.into(), total.into())
    }

    fn edge_subset(n: usize, mask: u64) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut bit = 0;
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if mask >> bit & 1 == 1 {
                    out.push((u, v));
                }
                bit += 1;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn matches_direct_expectation(mask in 0u64..(1 << 15), c in 1u64..4) {
            let edges = edge_subset(6, mask);
            prop_assert_eq!(beta_of_edges(6, &edges, c), beta_by_enumeration(6, &edges, c));
        }

        #[test]
        fn union_dominates_product(m1 in 0u64..(1 << 21), m2 in 0u64..(1 << 21), c in 2u64..6) {
            let e1 = edge_subset(7, m1);
            let e2 = edge_subset(7, m2);
            let mut both = e1.clone();
            both.extend(&e2);
            both.sort_unstable();
            both.dedup();
            let lhs = beta_of_edges(7, &both, c);
            let rhs = beta_of_edges(7, &e1, c) * beta_of_edges(7, &e2, c);
            prop_assert!(lhs >= rhs);
        }

        #[test]
        fn disjoint_union_is_multiplicative(m1 in 0u64..(1 << 10), m2 in 0u64..(1 << 10), c in 1u64..5) {
            let a = Graph::from_edges(5, edge_subset(5, m1)).unwrap();
            let b = Graph::from_edges(5, edge_subset(5, m2)).unwrap();
            let u = a.disjoint_union(&b).unwrap();
            prop_assert_eq!(beta(&u, c), beta(&a, c) * beta(&b, c));
            prop_assert!(!beta(&u, c).is_zero());
        }
    }
}
