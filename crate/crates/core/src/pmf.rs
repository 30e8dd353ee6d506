//! Finite probability mass functions on non-negative integers.
//!
//! The exact flavor (`BigRational`) is produced by the enumeration oracle;
//! the float flavor by the limit-law engine and empirical histograms. Mass
//! dropped by truncation is kept in `truncation_deficit`, so support plus
//! deficit always sums to one.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq)]
pub struct Pmf<P> {
    support: BTreeMap<u128, P>,
    truncation_deficit: P,
}

pub type ExactPmf = Pmf<BigRational>;
pub type FloatPmf = Pmf<f64>;

impl<P: Clone> Pmf<P> {
    pub fn from_parts(support: BTreeMap<u128, P>, truncation_deficit: P) -> Self {
        Self {
            support,
            truncation_deficit,
        }
    }

    pub fn support(&self) -> &BTreeMap<u128, P> {
        &self.support
    }

    pub fn truncation_deficit(&self) -> &P {
        &self.truncation_deficit
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, &P)> {
        self.support.iter().map(|(&v, p)| (v, p))
    }
}

impl ExactPmf {
    pub fn point_mass(v: u128) -> Self {
        Self::from_parts(
            BTreeMap::from([(v, BigRational::from_integer(1.into()))]),
            BigRational::zero(),
        )
    }

    pub fn prob(&self, v: u128) -> BigRational {
        self.support
            .get(&v)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_mass(&self) -> BigRational {
        self.support
            .values()
            .fold(self.truncation_deficit.clone(), |a, p| a + p)
    }

    pub fn mean(&self) -> BigRational {
        self.moments(1).remove(0)
    }

    /// Raw moments `E[T^1..T^order]`, exact.
    pub fn moments(&self, order: usize) -> Vec<BigRational> {
        (1..=order as u32)
            .map(|k| {
                self.support
                    .iter()
                    .map(|(&v, p)| p * BigRational::from_integer(BigInt::from(v).pow(k)))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn to_float(&self) -> FloatPmf {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        FloatPmf::from_parts(
            self.support.iter().map(|(&v, p)| (v, f(p))).collect(),
            f(&self.truncation_deficit),
        )
    }
}

impl FloatPmf {
    pub fn point_mass(v: u128) -> Self {
        Self::from_parts(BTreeMap::from([(v, 1.0)]), 0.0)
    }

    pub fn prob(&self, v: u128) -> f64 {
        self.support.get(&v).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.support.values().sum::<f64>() + self.truncation_deficit
    }

    pub fn mean(&self) -> f64 {
        self.moments(1)[0]
    }

    /// Raw moments of the represented (truncated) mass.
    pub fn moments(&self, order: usize) -> Vec<f64> {
        (1..=order as i32)
            .map(|k| {
                self.support
                    .iter()
                    .map(|(&v, p)| p * (v as f64).powi(k))
                    .sum()
            })
            .collect()
    }

    /// Probabilities non-negative and support plus deficit within `tol` of 1.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.support.values().all(|&p| p >= 0.0)
            && self.truncation_deficit >= 0.0
            && (self.total_mass() - 1.0).abs() <= tol
    }
}

impl<P: std::fmt::Display> Pmf<P> {
    /// `value,probability` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,probability\n");
        for (v, p) in &self.support {
            let _ = writeln!(out, "{v},{p}");
        }
        out
    }
}

struct Support<'a, P>(&'a BTreeMap<u128, P>, fn(&P) -> String);

impl<P> Serialize for Support<'_, P> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (v, p) in self.0 {
            m.serialize_entry(&v.to_string(), &(self.1)(p))?;
        }
        m.end()
    }
}

impl Serialize for ExactPmf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Pmf", 2)?;
        st.serialize_field("support", &Support(&self.support, |p| p.to_string()))?;
        st.serialize_field("deficit", &self.truncation_deficit.to_string())?;
        st.end()
    }
}

impl Serialize for FloatPmf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct FloatSupport<'a>(&'a BTreeMap<u128, f64>);
        impl Serialize for FloatSupport<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (v, p) in self.0 {
                    m.serialize_entry(&v.to_string(), p)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Pmf", 2)?;
        st.serialize_field("support", &FloatSupport(&self.support))?;
        st.serialize_field("deficit", &self.truncation_deficit)?;
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
    fn exact_moments_and_json() {
        let p = ExactPmf::from_parts(
            BTreeMap::from([(0, q(3, 4)), (3, q(1, 4))]),
            BigRational::zero(),
        );
        assert_eq!(p.mean(), q(3, 4));
        assert_eq!(p.moments(2), vec![q(3, 4), q(9, 4)]);
        assert_eq!(p.total_mass(), q(1, 1));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"support":{"0":"3/4","3":"1/4"},"deficit":"0"}"#
        );
        assert_eq!(p.to_csv(), "value,probability\n0,3/4\n3,1/4\n");
    }

    #[test]
    fn json_keys_in_numeric_order() {
        let p = FloatPmf::from_parts(BTreeMap::from([(2, 0.5), (10, 0.5)]), 0.0);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"support":{"2":0.5,"10":0.5},"deficit":0.0}"#
        );
        assert!(p.is_valid(1e-12));
        assert_eq!(p.mean(), 6.0);
    }
}
