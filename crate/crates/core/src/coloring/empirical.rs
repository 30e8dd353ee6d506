use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::pmf::FloatPmf;

/// Histogram of sampled values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDist {
    pub counts: BTreeMap<u128, u64>,
    pub total_samples: u64,
    pub seed: u64,
}

impl EmpiricalDist {
    pub fn new(counts: BTreeMap<u128, u64>, seed: u64) -> Self {
        let total_samples = counts.values().sum();
        Self {
            counts,
            total_samples,
            seed,
        }
    }

    pub fn to_pmf(&self) -> FloatPmf {
        let n = self.total_samples as f64;
        FloatPmf::from_parts(
            self.counts
                .iter()
                .map(|(&v, &k)| (v, k as f64 / n))
                .collect(),
            0.0,
        )
    }

    pub fn frequency(&self, v: u128) -> f64 {
        self.counts.get(&v).copied().unwrap_or(0) as f64 / self.total_samples as f64
    }

    pub fn mean(&self) -> f64 {
        self.counts
            .iter()
            .map(|(&v, &k)| v as f64 * k as f64)
            .sum::<f64>()
            / self.total_samples as f64
    }

    /// Standard error of the sample mean.
    pub fn standard_error(&self) -> f64 {
        let n = self.total_samples as f64;
        let mean = self.mean();
        let var = self
            .counts
            .iter()
            .map(|(&v, &k)| k as f64 * (v as f64 - mean).powi(2))
            .sum::<f64>()
            / (n - 1.0).max(1.0);
        (var / n).sqrt()
    }

    /// Exact raw moments `1..=order` of the empirical measure.
    pub fn moments(&self, order: usize) -> Vec<BigRational> {
        let total = BigInt::from(self.total_samples);
        (1..=order as u32)
            .map(|k| {
                let sum = self
                    .counts
                    .iter()
                    .map(|(&v, &c)| BigInt::from(v).pow(k) * c)
                    .fold(BigInt::zero(), |a, b| a + b);
                BigRational::new(sum, total.clone())
            })
            .collect()
    }

    /// `value,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (v, k) in &self.counts {
            let _ = writeln!(out, "{v},{k}");
        }
        out
    }
}

/// `empirical_moments` as a free function.
pub fn empirical_moments(d: &EmpiricalDist, order: usize) -> Vec<BigRational> {
    d.moments(order)
}

impl Serialize for EmpiricalDist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a BTreeMap<u128, u64>);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (v, k) in self.0 {
                    m.serialize_entry(&v.to_string(), k)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("EmpiricalDist", 3)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("samples", &self.total_samples)?;
        st.serialize_field("counts", &Counts(&self.counts))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_sample() {
        let d = EmpiricalDist::new(BTreeMap::from([(5, 1)]), 0);
        assert_eq!(empirical_moments(&d, 1), vec![q(5, 1)]);
    }

    #[test]
    fn two_point_moments() {
        let d = EmpiricalDist::new(BTreeMap::from([(0, 1), (3, 1)]), 0);
        assert_eq!(d.moments(2), vec![q(3, 2), q(9, 2)]);
        assert_eq!(d.mean(), 1.5);
    }

    #[test]
    fn json_and_csv() {
        let d = EmpiricalDist::new(BTreeMap::from([(0, 3), (12, 1)]), 9);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"seed":9,"samples":4,"counts":{"0":3,"12":1}}"#
        );
        assert_eq!(d.to_csv(), "value,count\n0,3\n12,1\n");
        assert!(d.to_pmf().is_valid(1e-15));
    }
}
