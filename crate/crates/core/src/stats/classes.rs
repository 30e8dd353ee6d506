//! Induced class counts `Λ_k`: the number of `(r+1)`-vertex subsets whose
//! induced subgraph contains a spanning `r`-star and has exactly `k` vertices
//! of full degree `r`.
//!
//! A spanning star on `r+1` vertices is exactly a vertex of full degree, so a
//! subset belongs to class `k` iff it has `k` full-degree vertices. Two
//! independent routes compute the same vector:
//!
//! - star enumeration visits every `(center, r-subset of neighbors)` pair.
//!   Each subset is discovered once per full vertex, so the visits split by
//!   `k(S)` are `k·Λ_k`;
//! - clique moments count, for every clique `Q` on `j+1` vertices, the ways to
//!   extend it by `r-j` common neighbors. This yields
//!   `M_j = Σ_k k·C(k-1, j)·Λ_k`, a triangular system in `Λ`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::stars::count_stars;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::binom_u128;

pub const DEFAULT_CLASS_BUDGET: u128 = 1_000_000_000;

/// Graphs up to this many vertices use dense bitset rows for clique moments.
const BITSET_MAX_VERTICES: usize = 8192;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarClassCounts {
    pub r: u32,
    pub n_star: BigUint,
    /// `Λ_1..Λ_{r+1}` (index `k - 1`).
    pub class_counts: Vec<BigUint>,
}

impl StarClassCounts {
    pub fn lambda(&self, k: usize) -> &BigUint {
        &self.class_counts[k - 1]
    }

    /// `Σ_k k·Λ_k`; equals `n_star` for any graph.
    pub fn weighted_sum(&self) -> BigUint {
        self.class_counts
            .iter()
            .enumerate()
            .map(|(i, l)| l * (i as u64 + 1))
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct ClassCountsJson {
    r: u32,
    n_star: String,
    lambda_raw: Vec<String>,
}

impl Serialize for StarClassCounts {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassCountsJson {
            r: self.r,
            n_star: self.n_star.to_string(),
            lambda_raw: self.class_counts.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StarClassCounts {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ClassCountsJson::deserialize(d)?;
        let big = |s: &str| s.parse::<BigUint>().map_err(D::Error::custom);
        let class_counts = raw
            .lambda_raw
            .iter()
            .map(|s| big(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if class_counts.len() != raw.r as usize + 1 {
            return Err(D::Error::custom("lambda_raw must have r + 1 entries"));
        }
        Ok(Self {
            r: raw.r,
            n_star: big(&raw.n_star)?,
            class_counts,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassCountMethod {
    StarEnumeration,
    CliqueMoments,
    /// Star enumeration when it fits the budget, clique moments otherwise.
    Auto,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassCountOptions {
    pub method: ClassCountMethod,
    /// Maximum number of star visits for star enumeration.
    pub budget: u128,
}

impl Default for ClassCountOptions {
    fn default() -> Self {
        Self {
            method: ClassCountMethod::StarEnumeration,
            budget: DEFAULT_CLASS_BUDGET,
        }
    }
}

/// Class counts by star enumeration with the default budget.
pub fn class_counts(g: &Graph, r: u32) -> Result<StarClassCounts> {
    class_counts_with(g, r, &ClassCountOptions::default())
}

pub fn class_counts_with(g: &Graph, r: u32, opts: &ClassCountOptions) -> Result<StarClassCounts> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let visits = count_stars(g, r);
    let within = u128::try_from(&visits).map_or(false, |v| v <= opts.budget);
    match opts.method {
        ClassCountMethod::StarEnumeration if !within => Err(Error::Budget {
            what: "class-count star enumeration",
            required: u128::try_from(&visits).unwrap_or(u128::MAX),
            budget: opts.budget,
        }),
        ClassCountMethod::StarEnumeration => by_star_enumeration(g, r, visits),
        ClassCountMethod::Auto if within => by_star_enumeration(g, r, visits),
        ClassCountMethod::CliqueMoments | ClassCountMethod::Auto => class_counts_by_cliques(g, r),
    }
}

fn by_star_enumeration(g: &Graph, r: u32, n_star: BigUint) -> Result<StarClassCounts> {
    let r_us = r as usize;
    if r_us > 31 {
        return Err(Error::InvalidParameter(
            "star enumeration supports r <= 31".into(),
        ));
    }
    // hits[k] = number of (center, leaves) pairs whose vertex set has k
    // full-degree vertices.
    let hits = (0..g.vertex_count())
        .into_par_iter()
        .filter(|&v| g.degree(v) >= r_us)
        .fold(
            || vec![0u128; r_us + 2],
            |mut hits, v| {
                let mut rows = vec![0u32; r_us];
                let mut chosen = vec![0u32; r_us];
                enumerate_leaves(g, g.neighbors(v), 0, 0, &mut chosen, &mut rows, &mut hits);
                hits
            },
        )
        .reduce(
            || vec![0u128; r_us + 2],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let class_counts = (1..=r_us + 1)
        .map(|k| {
            let h = hits[k];
            assert_eq!(h % k as u128, 0, "class {k} visited {h} times");
            BigUint::from(h / k as u128)
        })
        .collect();
    Ok(StarClassCounts {
        r,
        n_star,
        class_counts,
    })
}

/// Recursively picks `r` leaves out of `adj`; `rows[t]` holds adjacency bits
/// of leaf `t` towards leaves `0..t`.
fn enumerate_leaves(
    g: &Graph,
    adj: &[u32],
    start: usize,
    depth: usize,
    chosen: &mut [u32],
    rows: &mut [u32],
    hits: &mut [u128],
) {
    let r = chosen.len();
    if depth == r {
        // The center is adjacent to every leaf; leaf i is full iff adjacent
        // to the other r - 1 leaves.
        let mut k = 1;
        for i in 0..r {
            let mut deg = rows[i].count_ones();
            for row in &rows[i + 1..r] {
                deg += (row >> i) & 1;
            }
            k += (deg as usize == r - 1) as usize;
        }
        hits[k] += 1;
        return;
    }
    let remaining = r - depth;
    for idx in start..=adj.len() - remaining {
        let w = adj[idx];
        let mut row = 0u32;
        for (j, &u) in chosen[..depth].iter().enumerate() {
            if g.has_edge(u as usize, w as usize) {
                row |= 1 << j;
            }
        }
        chosen[depth] = w;
        rows[depth] = row;
        enumerate_leaves(g, adj, idx + 1, depth + 1, chosen, rows, hits);
    }
}

/// Class counts from clique extension moments. Cost is driven by the number
/// of cliques on at most `r` vertices rather than by the number of stars.
pub fn class_counts_by_cliques(g: &Graph, r: u32) -> Result<StarClassCounts> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let r_us = r as usize;
    let moments = if g.vertex_count() <= BITSET_MAX_VERTICES {
        BitRows::new(g).moments(r_us)
    } else {
        sorted_moments(g, r_us)
    }?;

    // M_j = Σ_{k > j} k·C(k-1, j)·Λ_k; solve from j = r down to 0.
    let overflow = || Error::Overflow("clique moments exceed u128".into());
    let mut lambda = vec![0u128; r_us + 2];
    for j in (0..=r_us).rev() {
        let mut rest = moments[j];
        for k in j + 2..=r_us + 1 {
            let coef = (k as u128)
                .checked_mul(binom_u128(k as u64 - 1, j as u64).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
            let term = coef.checked_mul(lambda[k]).ok_or_else(overflow)?;
            rest = rest
                .checked_sub(term)
                .expect("clique moments are consistent");
        }
        let k = j as u128 + 1;
        assert_eq!(rest % k, 0, "moment {j} not divisible by {k}");
        lambda[j + 1] = rest / k;
    }
    Ok(StarClassCounts {
        r,
        n_star: count_stars(g, r),
        class_counts: lambda[1..].iter().map(|&x| BigUint::from(x)).collect(),
    })
}

/// Accumulates the contribution of a clique on `size` vertices whose common
/// neighborhood has `common` vertices.
fn add_clique(moments: &mut [u128], r: usize, size: usize, common: u64) -> Result<()> {
    let overflow = || Error::Overflow("clique moments exceed u128".into());
    let ext = binom_u128(common, (r + 1 - size) as u64).ok_or_else(overflow)?;
    let term = ext.checked_mul(size as u128).ok_or_else(overflow)?;
    moments[size - 1] = moments[size - 1].checked_add(term).ok_or_else(overflow)?;
    if size == r {
        moments[r] = moments[r].checked_add(common.into()).ok_or_else(overflow)?;
    }
    Ok(())
}

fn merge(a: Result<Vec<u128>>, b: Result<Vec<u128>>) -> Result<Vec<u128>> {
    let (mut a, b) = (a?, b?);
    for (x, y) in a.iter_mut().zip(b) {
        *x = x
            .checked_add(y)
            .ok_or_else(|| Error::Overflow("clique moments exceed u128".into()))?;
    }
    Ok(a)
}

struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for v in 0..n {
            for &u in g.neighbors(v) {
                bits[v * words + u as usize / 64] |= 1 << (u % 64);
            }
        }
        Self { words, bits }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    fn moments(&self, r: usize) -> Result<Vec<u128>> {
        let n = self.bits.len() / self.words;
        (0..n)
            .into_par_iter()
            .map(|v| {
                let mut m = vec![0u128; r + 1];
                self.extend(&mut m, r, 1, v, self.row(v).to_vec())?;
                Ok(m)
            })
            .reduce(|| Ok(vec![0u128; r + 1]), merge)
    }

    fn extend(
        &self,
        m: &mut [u128],
        r: usize,
        size: usize,
        last: usize,
        common: Vec<u64>,
    ) -> Result<()> {
        let count: u64 = common.iter().map(|w| u64::from(w.count_ones())).sum();
        add_clique(m, r, size, count)?;
        if size == r {
            return Ok(());
        }
        for x in ones_above(&common, last) {
            let row = self.row(x);
            if size + 1 == r {
                let c: u64 = common
                    .iter()
                    .zip(row)
                    .map(|(a, b)| u64::from((a & b).count_ones()))
                    .sum();
                add_clique(m, r, r, c)?;
            } else {
                let next: Vec<u64> = common.iter().zip(row).map(|(a, b)| a & b).collect();
                self.extend(m, r, size + 1, x, next)?;
            }
        }
        Ok(())
    }
}

/// Set bits strictly above `last`.
fn ones_above(words: &[u64], last: usize) -> impl Iterator<Item = usize> + '_ {
    let first = last + 1;
    let start_word = first / 64;
    words
        .iter()
        .enumerate()
        .skip(start_word)
        .flat_map(move |(i, &w)| {
            let mut w = if i == start_word {
                w & (u64::MAX << (first % 64))
            } else {
                w
            };
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
}

fn sorted_moments(g: &Graph, r: usize) -> Result<Vec<u128>> {
    fn extend(
        g: &Graph,
        m: &mut [u128],
        r: usize,
        size: usize,
        last: u32,
        common: &[u32],
    ) -> Result<()> {
        add_clique(m, r, size, common.len() as u64)?;
        if size == r {
            return Ok(());
        }
        let mut next = Vec::with_capacity(common.len());
        let above = common.partition_point(|&x| x <= last);
        for &x in &common[above..] {
            next.clear();
            intersect_sorted(common, g.neighbors(x as usize), &mut next);
            extend(g, m, r, size + 1, x, &next)?;
        }
        Ok(())
    }

    (0..g.vertex_count())
        .into_par_iter()
        .map(|v| {
            let mut m = vec![0u128; r + 1];
            extend(g, &mut m, r, 1, v as u32, g.neighbors(v))?;
            Ok(m)
        })
        .reduce(|| Ok(vec![0u128; r + 1]), merge)
}

fn intersect_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}
