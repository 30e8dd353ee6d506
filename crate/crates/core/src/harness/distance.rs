use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::pmf::{ExactPmf, FloatPmf};

/// Total variation distance. Each side's truncation deficit is treated as
/// mass on a single atom outside both supports, shared by the two laws.
pub fn tv_distance(p: &FloatPmf, q: &FloatPmf) -> f64 {
    let (a, b) = (p.support(), q.support());
    let mut sum = (p.truncation_deficit() - q.truncation_deficit()).abs();
    for (v, x) in a {
        sum += (x - b.get(v).copied().unwrap_or(0.0)).abs();
    }
    for (v, y) in b {
        if !a.contains_key(v) {
            sum += y.abs();
        }
    }
    (0.5 * sum).clamp(0.0, 1.0)
}

pub fn tv_distance_exact(p: &ExactPmf, q: &ExactPmf) -> BigRational {
    let (a, b) = (p.support(), q.support());
    let zero = BigRational::zero();
    let mut sum = (p.truncation_deficit() - q.truncation_deficit()).abs();
    for (v, x) in a {
        sum += (x - b.get(v).unwrap_or(&zero)).abs();
    }
    for (v, y) in b {
        if !a.contains_key(v) {
            sum += y.abs();
        }
    }
    sum / BigRational::from_integer(2.into())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use proptest::prelude::*;

    use super::*;

    fn fp(pairs: &[(u128, f64)], deficit: f64) -> FloatPmf {
        FloatPmf::from_parts(pairs.iter().copied().collect(), deficit)
    }

    #[test]
    fn examples() {
        let p = fp(&[(0, 0.75), (3, 0.25)], 0.0);
        assert_eq!(tv_distance(&p, &p), 0.0);
        assert_eq!(tv_distance(&p, &fp(&[(1, 1.0)], 0.0)), 1.0);
        assert_eq!(tv_distance(&p, &FloatPmf::point_mass(0)), 0.25);
        let q = |n, d| BigRational::new(BigInt::from(n), BigInt::from(d));
        use num_bigint::BigInt;
        let e = ExactPmf::from_parts(BTreeMap::from([(0, q(3, 4)), (3, q(1, 4))]), q(0, 1));
        assert_eq!(tv_distance_exact(&e, &ExactPmf::point_mass(0)), q(1, 4));
    }

    #[test]
    fn deficits_share_an_atom() {
        let a = fp(&[(0, 0.9)], 0.1);
        let b = fp(&[(0, 0.95)], 0.05);
        assert!((tv_distance(&a, &b) - 0.05).abs() < 1e-15);
        assert!((tv_distance(&a, &fp(&[(0, 1.0)], 0.0)) - 0.1).abs() < 1e-15);
    }

    fn arb_pmf() -> impl Strategy<Value = FloatPmf> {
        prop::collection::vec((0u128..8, 1u32..100), 1..6).prop_map(|w| {
            let mut m = BTreeMap::new();
            for (v, x) in w {
                *m.entry(v).or_insert(0.0) += f64::from(x);
            }
            let total: f64 = m.values().sum();
            m.values_mut().for_each(|x| *x /= total);
            FloatPmf::from_parts(m, 0.0)
        })
    }

    proptest! {
        #[test]
        fn is_a_metric(p in arb_pmf(), q in arb_pmf(), s in arb_pmf()) {
            let pq = tv_distance(&p, &q);
            prop_assert!((0.0..=1.0).contains(&pq));
            prop_assert_eq!(tv_distance(&p, &p), 0.0);
            prop_assert!((pq - tv_distance(&q, &p)).abs() < 1e-15);
            prop_assert!(pq <= tv_distance(&p, &s) + tv_distance(&s, &q) + 1e-12);
        }
    }
}
