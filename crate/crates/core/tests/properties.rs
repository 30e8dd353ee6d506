use monostar::coloring::monte_carlo;
use monostar::graph::{load_edge_list, save_edge_list};
use monostar::harness::tv_distance;
use monostar::limit::{limit_pmf, LimitLawParams};
use monostar::oracle::exact_pmf;
use monostar::stats::{class_counts, class_counts_by_cliques, count_stars};
use monostar::Graph;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..7).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> =
            (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |es| Graph::from_edges(n, es).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_mean_is_stars_over_power(g in small_graph(), r in 1u32..4, c in 1u32..4) {
        let pmf = exact_pmf(&g, r, c).unwrap();
        prop_assert!(pmf.total_mass().is_one());
        let n = BigRational::from_integer(count_stars(&g, r).into());
        let denom = BigRational::from_integer(BigUint::from(c).pow(r).into());
        prop_assert_eq!(pmf.mean(), n / denom);
    }

    #[test]
    fn class_routes_agree(g in small_graph(), r in 1u32..4) {
        let a = class_counts(&g, r).unwrap();
        let b = class_counts_by_cliques(&g, r).unwrap();
        prop_assert_eq!(&a.weighted_sum(), &count_stars(&g, r));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn edge_list_round_trip(g in small_graph()) {
        let mut buf = Vec::new();
        save_edge_list(&g, &mut buf).unwrap();
        let back = load_edge_list(&buf[..]).unwrap();
        prop_assert_eq!(back.graph, g);
    }

    #[test]
    fn limit_pmf_mean_matches_params(theta in 0.0f64..1.5, l2 in 0.0f64..1.0, extra in 0.0f64..1.0) {
        let thetas = if theta > 0.0 { vec![theta] } else { vec![] };
        let l1 = theta * theta / 2.0 + extra;
        let p = LimitLawParams::new(2, thetas, vec![l1, l2, 0.0]).unwrap();
        let pmf = limit_pmf(&p, 1e-12).unwrap();
        prop_assert!(pmf.is_valid(1e-12));
        prop_assert!((pmf.mean() - p.mean()).abs() < 1e-8 * (1.0 + p.mean()));
    }
}

#[test]
fn monte_carlo_tracks_oracle() {
    for spec in ["tadpole", "complete:4", "star:3", "path:6"] {
        let g = monostar::graph::generate(&spec.parse().unwrap()).unwrap();
        let exact = exact_pmf(&g, 2, 3).unwrap().to_float();
        let mc = monte_carlo(&g, 2, 3, 200_000, 11).unwrap();
        let tv = tv_distance(&mc.to_pmf(), &exact);
        assert!(tv < 0.006, "{spec}: tv {tv}");
    }
}
