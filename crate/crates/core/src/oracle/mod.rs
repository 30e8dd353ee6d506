//! Exact law of `T(K_{1,r}, G)` by enumerating colorings.
//!
//! The law is invariant under permuting the palette, so vertex 0 is pinned to
//! color 0 and only the `c^{|V|-1}` completions are visited.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coloring::StarEvaluator;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pmf::ExactPmf;

pub const DEFAULT_ORACLE_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Maximum number of colorings to evaluate.
    pub budget: u128,
    /// Keep one coloring per support value.
    pub witnesses: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_ORACLE_BUDGET,
            witnesses: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleOutput {
    pub pmf: ExactPmf,
    /// For each support value, the lexicographically first coloring attaining
    /// it (when requested).
    pub witnesses: BTreeMap<u128, Vec<u32>>,
    pub colorings_visited: u128,
}

pub fn exact_pmf(g: &Graph, r: u32, c: u32) -> Result<ExactPmf> {
    Ok(exact_pmf_with(g, r, c, &OracleOptions::default())?.pmf)
}

pub fn exact_pmf_with(g: &Graph, r: u32, c: u32, opts: &OracleOptions) -> Result<OracleOutput> {
    if c == 0 {
        return Err(Error::InvalidParameter("need at least one color".into()));
    }
    let eval = StarEvaluator::new(g, r)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(OracleOutput {
            pmf: ExactPmf::point_mass(0),
            witnesses: BTreeMap::from([(0, Vec::new())]),
            colorings_visited: 1,
        });
    }
    let free = (n - 1) as u32;
    let required = u128::from(c).checked_pow(free).unwrap_or(u128::MAX);
    if required > opts.budget {
        return Err(Error::Budget {
            what: "exact enumeration colorings",
            required,
            budget: opts.budget,
        });
    }

    type Tally = BTreeMap<u128, (u64, Vec<u32>)>;
    let run_branch = |first: Option<u32>| -> Tally {
        let mut colors = vec![0u32; n];
        let fixed = match first {
            Some(x) => {
                colors[1] = x;
                2
            }
            None => 1,
        };
        let mut scratch = eval.scratch();
        let mut tally: Tally = BTreeMap::new();
        loop {
            let t = eval.eval(&colors, &mut scratch);
            tally
                .entry(t)
                .and_modify(|e| e.0 += 1)
                .or_insert_with(|| (1, if opts.witnesses { colors.clone() } else { Vec::new() }));
            // Odometer over positions fixed..n.
            let mut pos = n;
            loop {
                if pos == fixed {
                    return tally;
                }
                pos -= 1;
                colors[pos] += 1;
                if colors[pos] < c {
                    break;
                }
                colors[pos] = 0;
            }
        }
    };
    let merge = |mut a: Tally, b: Tally| {
        for (t, (k, w)) in b {
            a.entry(t)
                .and_modify(|e| {
                    e.0 += k;
                    if w < e.1 {
                        e.1 = w.clone();
                    }
                })
                .or_insert((k, w));
        }
        a
    };
    let tally = if n >= 2 {
        (0..c).into_par_iter().map(|x| run_branch(Some(x))).reduce(BTreeMap::new, merge)
    } else {
        run_branch(None)
    };

    let total = BigInt::from(required);
    let mut support = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (t, (k, w)) in tally {
        support.insert(t, BigRational::new(BigInt::from(k), total.clone()));
        if opts.witnesses {
            witnesses.insert(t, w);
        }
    }
    Ok(OracleOutput {
        pmf: ExactPmf::from_parts(support, BigRational::zero()),
        witnesses,
        colorings_visited: required,
    })
}

pub fn pmf_mean(p: &ExactPmf) -> BigRational {
    p.mean()
}

pub fn pmf_moments(p: &ExactPmf, order: usize) -> Vec<BigRational> {
    p.moments(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{eval_t, Coloring};
    use crate::graph::{generate, GeneratorSpec};
    use crate::stats::count_stars;

    fn g(s: &str) -> Graph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn support(p: &ExactPmf) -> Vec<(u128, BigRational)> {
        p.iter().map(|(v, x)| (v, x.clone())).collect()
    }

    #[test]
    fn triangle_two_colors() {
        let p = exact_pmf(&g("complete:3"), 2, 2).unwrap();
        assert_eq!(support(&p), vec![(0, q(3, 4)), (3, q(1, 4))]);
        assert_eq!(pmf_mean(&p), q(3, 4));
    }

    #[test]
    fn cherry_three_colors() {
        let p = exact_pmf(&g("star:2"), 2, 3).unwrap();
        assert_eq!(support(&p), vec![(0, q(8, 9)), (1, q(1, 9))]);
    }

    #[test]
    fn one_color_is_a_point_mass() {
        let gr = g("figure2:3");
        let p = exact_pmf(&gr, 2, 1).unwrap();
        let n = u128::try_from(count_stars(&gr, 2)).unwrap();
        assert_eq!(support(&p), vec![(n, q(1, 1))]);
        assert_eq!(pmf_mean(&ExactPmf::point_mass(7)), q(7, 1));
    }

    #[test]
    fn star3_mean() {
        let p = exact_pmf(&g("star:3"), 3, 2).unwrap();
        assert_eq!(pmf_mean(&p), q(1, 8));
        assert_eq!(pmf_moments(&p, 2), vec![q(1, 8), q(1, 8)]);
    }

    #[test]
    fn witnesses_attain_their_values() {
        let gr = g("tadpole");
        let out = exact_pmf_with(&gr, 2, 3, &OracleOptions { witnesses: true, ..Default::default() }).unwrap();
        assert_eq!(out.witnesses.len(), out.pmf.support().len());
        for (t, w) in &out.witnesses {
            assert_eq!(eval_t(&gr, 2, &Coloring::new(w.clone(), 3).unwrap()).unwrap(), *t);
        }
    }

    #[test]
    fn budget_names_the_limit() {
        let opts = OracleOptions { budget: 100, ..Default::default() };
        match exact_pmf_with(&g("path:6"), 2, 3, &opts) {
            Err(Error::Budget { required, budget, .. }) => assert_eq!((required, budget), (243, 100)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(support(&exact_pmf(&Graph::empty(0).unwrap(), 2, 3).unwrap()), vec![(0, q(1, 1))]);
        assert_eq!(support(&exact_pmf(&Graph::empty(1).unwrap(), 1, 3).unwrap()), vec![(0, q(1, 1))]);
    }
}
