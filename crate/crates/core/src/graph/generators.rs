//! Deterministic generators for the graph families used by the examples.
//!
//! Every generator has a compact string form (`star:4`, `figure2:10`,
//! `er:100:0.05:seed=7`, `copies:3:tadpole`, ...) that round-trips through
//! [`std::fmt::Display`] and [`std::str::FromStr`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::math::ceil_cbrt;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GeneratorSpec {
    /// `K_{1,leaves}`; the hub is vertex 0.
    Star {
        leaves: u64,
    },
    /// Disjoint stars with `⌊n·a_s⌋` leaves each; empty stars are dropped.
    StarUnion {
        weights: Vec<f64>,
        n: u64,
    },
    /// `n` disjoint stars with `⌊n·a_s + n^{(r-1)/r}⌋` leaves, where `a_s = 0`
    /// past the given weights.
    ShiftedStarUnion {
        weights: Vec<f64>,
        n: u64,
        r: u32,
    },
    Complete {
        n: u64,
    },
    CompleteBipartite {
        left: u64,
        right: u64,
    },
    Cycle {
        n: u64,
    },
    /// Path on `n` vertices.
    Path {
        n: u64,
    },
    /// Circulant `degree`-regular graph: neighbors at offsets `±1..±degree/2`,
    /// plus the antipode when `degree` is odd.
    Circulant {
        n: u64,
        degree: u64,
    },
    /// Triangle `0 1 2` with pendant vertex `3` attached to `2`.
    Tadpole31,
    DisjointCopies {
        inner: Box<GeneratorSpec>,
        count: u64,
    },
    /// `K_{1,n}`, one leaf bridged to `K_m` (`m = ⌈n^{2/3}⌉`), which is bridged
    /// to the path `P_{n²}`.
    Figure2Composite {
        n: u64,
    },
    ErdosRenyi {
        n: u64,
        p: f64,
        seed: u64,
    },
}

const SHIFT_SLACK: f64 = 1e-9;

fn floor_slack(x: f64) -> u64 {
    (x + SHIFT_SLACK).floor().max(0.0) as u64
}

impl GeneratorSpec {
    /// The size parameter `n` used by color-scaling rules.
    pub fn size_parameter(&self) -> u64 {
        match self {
            Self::Star { leaves } => *leaves,
            Self::StarUnion { n, .. }
            | Self::ShiftedStarUnion { n, .. }
            | Self::Complete { n }
            | Self::Cycle { n }
            | Self::Path { n }
            | Self::Circulant { n, .. }
            | Self::Figure2Composite { n }
            | Self::ErdosRenyi { n, .. } => *n,
            Self::CompleteBipartite { left, .. } => *left,
            Self::Tadpole31 => 4,
            Self::DisjointCopies { count, .. } => *count,
        }
    }

    /// Leaf counts of the stars a star-union spec produces, in order.
    pub fn star_sizes(&self) -> Option<Vec<u64>> {
        match self {
            Self::StarUnion { weights, n } => Some(
                weights
                    .iter()
                    .map(|a| floor_slack(*n as f64 * a))
                    .filter(|&s| s > 0)
                    .collect(),
            ),
            Self::ShiftedStarUnion { weights, n, r } => {
                let shift = (*n as f64).powf((*r as f64 - 1.0) / *r as f64);
                Some(
                    (0..*n as usize)
                        .map(|s| {
                            let a = weights.get(s).copied().unwrap_or(0.0);
                            floor_slack(*n as f64 * a + shift)
                        })
                        .filter(|&s| s > 0)
                        .collect(),
                )
            }
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            Self::StarUnion { weights, .. } | Self::ShiftedStarUnion { weights, .. }
                if weights.iter().any(|a| !(a.is_finite() && *a >= 0.0)) =>
            {
                bad(format!(
                    "star weights must be finite and non-negative: {weights:?}"
                ))
            }
            Self::ShiftedStarUnion { r, .. } if *r == 0 => {
                bad("shift exponent r must be >= 1".into())
            }
            Self::Cycle { n } if *n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            Self::Circulant { n, degree } if *degree >= *n => {
                bad(format!("circulant degree {degree} must be < n = {n}"))
            }
            Self::Circulant { n, degree } if degree % 2 == 1 && n % 2 == 1 => bad(format!(
                "odd degree {degree} needs an even vertex count, got {n}"
            )),
            Self::ErdosRenyi { p, .. } if !(0.0..=1.0).contains(p) => {
                bad(format!("edge probability {p} outside [0, 1]"))
            }
            Self::Figure2Composite { n } if *n == 0 => bad("figure2 needs n >= 1".into()),
            _ => Ok(()),
        }
    }
}

fn too_big(what: &str) -> Error {
    Error::Size(format!("{what} overflows the vertex id space"))
}

fn checked_n(n: u64) -> Result<usize> {
    if n > u32::MAX as u64 {
        return Err(too_big(&format!("{n} vertices")));
    }
    Ok(n as usize)
}

/// Accumulates vertices and edges while a generator composes parts.
#[derive(Default)]
struct Builder {
    n: u64,
    edges: Vec<(u32, u32)>,
}

impl Builder {
    fn reserve_vertices(&mut self, k: u64) -> Result<u32> {
        let start = self.n;
        self.n = self.n.checked_add(k).ok_or_else(|| too_big("graph"))?;
        checked_n(self.n)?;
        Ok(start as u32)
    }

    fn edge(&mut self, u: u32, v: u32) {
        self.edges.push((u, v));
    }

    fn star(&mut self, leaves: u64) -> Result<u32> {
        let hub = self.reserve_vertices(leaves + 1)?;
        for i in 1..=leaves as u32 {
            self.edge(hub, hub + i);
        }
        Ok(hub)
    }

    fn clique(&mut self, n: u64) -> Result<u32> {
        let base = self.reserve_vertices(n)?;
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                self.edge(base + i, base + j);
            }
        }
        Ok(base)
    }

    fn path(&mut self, n: u64) -> Result<u32> {
        let base = self.reserve_vertices(n)?;
        for i in 1..n as u32 {
            self.edge(base + i - 1, base + i);
        }
        Ok(base)
    }

    fn finish(self) -> Result<Graph> {
        Graph::from_edges(checked_n(self.n)?, self.edges)
    }
}

/// Builds the graph described by `spec`. Deterministic for every spec,
/// including `ErdosRenyi` given its seed.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    let mut b = Builder::default();
    match spec {
        GeneratorSpec::Star { leaves } => {
            b.star(*leaves)?;
        }
        GeneratorSpec::StarUnion { .. } | GeneratorSpec::ShiftedStarUnion { .. } => {
            for s in spec.star_sizes().unwrap() {
                b.star(s)?;
            }
        }
        GeneratorSpec::Complete { n } => {
            b.clique(*n)?;
        }
        GeneratorSpec::CompleteBipartite { left, right } => {
            let l = b.reserve_vertices(*left)?;
            let r = b.reserve_vertices(*right)?;
            for i in 0..*left as u32 {
                for j in 0..*right as u32 {
                    b.edge(l + i, r + j);
                }
            }
        }
        GeneratorSpec::Cycle { n } => {
            let base = b.path(*n)?;
            b.edge(base, base + *n as u32 - 1);
        }
        GeneratorSpec::Path { n } => {
            b.path(*n)?;
        }
        GeneratorSpec::Circulant { n, degree } => {
            b.reserve_vertices(*n)?;
            let n = *n;
            for v in 0..n {
                for off in 1..=degree / 2 {
                    b.edge(v as u32, ((v + off) % n) as u32);
                }
                if degree % 2 == 1 {
                    b.edge(v as u32, ((v + n / 2) % n) as u32);
                }
            }
        }
        GeneratorSpec::Tadpole31 => {
            b.clique(3)?;
            let tail = b.reserve_vertices(1)?;
            b.edge(2, tail);
        }
        GeneratorSpec::DisjointCopies { inner, count } => {
            let g = generate(inner)?;
            let size = g.vertex_count() as u64;
            size.checked_mul(*count).ok_or_else(|| too_big("copies"))?;
            for _ in 0..*count {
                let base = b.reserve_vertices(size)?;
                for (u, v) in g.edges() {
                    b.edge(base + u, base + v);
                }
            }
        }
        GeneratorSpec::Figure2Composite { n } => {
            let n = *n;
            let m = ceil_cbrt(u128::from(n) * u128::from(n)) as u64;
            let path_len = n.checked_mul(n).ok_or_else(|| too_big("figure2 path"))?;
            let hub = b.star(n)?;
            let clique = b.clique(m)?;
            let path = b.path(path_len)?;
            b.edge(hub + 1, clique);
            b.edge(clique + m as u32 - 1, path);
        }
        GeneratorSpec::ErdosRenyi { n, p, seed } => {
            b.reserve_vertices(*n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for u in 0..*n as u32 {
                for v in u + 1..*n as u32 {
                    if rng.random::<f64>() < *p {
                        b.edge(u, v);
                    }
                }
            }
        }
    }
    b.finish()
}

fn fmt_weights(w: &[f64]) -> String {
    w.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Star { leaves } => write!(f, "star:{leaves}"),
            Self::StarUnion { weights, n } => write!(f, "star-union:{n}:{}", fmt_weights(weights)),
            Self::ShiftedStarUnion { weights, n, r } => {
                write!(f, "star-union-shifted:{n}:{r}:{}", fmt_weights(weights))
            }
            Self::Complete { n } => write!(f, "complete:{n}"),
            Self::CompleteBipartite { left, right } => write!(f, "bipartite:{left}:{right}"),
            Self::Cycle { n } => write!(f, "cycle:{n}"),
            Self::Path { n } => write!(f, "path:{n}"),
            Self::Circulant { n, degree } => write!(f, "regular:{n}:{degree}"),
            Self::Tadpole31 => write!(f, "tadpole"),
            Self::DisjointCopies { inner, count } => write!(f, "copies:{count}:{inner}"),
            Self::Figure2Composite { n } => write!(f, "figure2:{n}"),
            Self::ErdosRenyi { n, p, seed } => write!(f, "er:{n}:{p}:seed={seed}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("generator `{s}`: {msg}"));
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, r),
            None => (s, ""),
        };
        let int = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| bad(&format!("`{t}` is not an integer")))
        };
        let float = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| bad(&format!("`{t}` is not a number")))
        };
        let weights = |t: &str| -> Result<Vec<f64>> { t.split(',').map(float).collect() };
        let args: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(':').collect()
        };
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} argument(s)")))
            }
        };
        let spec = match kind {
            "star" => {
                arity(1)?;
                Self::Star {
                    leaves: int(args[0])?,
                }
            }
            "star-union" => {
                arity(2)?;
                Self::StarUnion {
                    n: int(args[0])?,
                    weights: weights(args[1])?,
                }
            }
            "star-union-shifted" => {
                arity(3)?;
                let r = int(args[1])?;
                let r = u32::try_from(r).map_err(|_| bad("r too large"))?;
                Self::ShiftedStarUnion {
                    n: int(args[0])?,
                    r,
                    weights: weights(args[2])?,
                }
            }
            "complete" => {
                arity(1)?;
                Self::Complete { n: int(args[0])? }
            }
            "bipartite" => match args.len() {
                1 => {
                    let n = int(args[0])?;
                    Self::CompleteBipartite { left: n, right: n }
                }
                2 => Self::CompleteBipartite {
                    left: int(args[0])?,
                    right: int(args[1])?,
                },
                _ => return Err(bad("expected 1 or 2 arguments")),
            },
            "cycle" => {
                arity(1)?;
                Self::Cycle { n: int(args[0])? }
            }
            "path" => {
                arity(1)?;
                Self::Path { n: int(args[0])? }
            }
            "regular" | "circulant" => {
                arity(2)?;
                Self::Circulant {
                    n: int(args[0])?,
                    degree: int(args[1])?,
                }
            }
            "tadpole" => {
                arity(0)?;
                Self::Tadpole31
            }
            "copies" => {
                // The inner spec may itself contain ':'.
                let (count, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| bad("expected copies:COUNT:SPEC"))?;
                Self::DisjointCopies {
                    count: int(count)?,
                    inner: Box::new(inner.parse()?),
                }
            }
            "figure2" => {
                arity(1)?;
                Self::Figure2Composite { n: int(args[0])? }
            }
            "er" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err(bad("expected er:N:P[:seed=S]"));
                }
                let seed = match args.get(2) {
                    Some(t) => int(t.trim().strip_prefix("seed=").unwrap_or(t))?,
                    None => 0,
                };
                Self::ErdosRenyi {
                    n: int(args[0])?,
                    p: float(args[1])?,
                    seed,
                }
            }
            _ => return Err(bad("unknown generator kind")),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<GeneratorSpec> for String {
    fn from(s: GeneratorSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for GeneratorSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        let g = generate(&s.parse().unwrap()).unwrap();
        g.check_invariants().unwrap();
        g
    }

    #[test]
    fn star_and_complete() {
        let s = gen("star:4");
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(s.degree_sequence(), vec![4, 1, 1, 1, 1]);
        let k = gen("complete:4");
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.edge_count(), 6);
        assert!(k.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn cycle_degrees() {
        assert_eq!(gen("cycle:5").degree_sequence(), vec![2; 5]);
    }

    #[test]
    fn figure2_structure() {
        let g = gen("figure2:10");
        let m = 5; // ⌈10^{2/3}⌉ = ⌈4.64⌉
        assert_eq!(g.vertex_count(), 11 + m + 100);
        assert_eq!(g.edge_count(), 10 + m * (m - 1) / 2 + 99 + 2);
        assert_eq!(g.degree_sequence()[0], 10);
        assert_eq!(g.components().1, 1);
        // Removing the two bridges splits the graph into its three parts.
        let hub_part: Vec<u32> = (0..11).collect();
        let clique_part: Vec<u32> = (11..16).collect();
        let path_part: Vec<u32> = (16..116).collect();
        assert_eq!(g.induced_subgraph(&hub_part).edge_count(), 10);
        assert_eq!(g.induced_subgraph(&clique_part).edge_count(), 10);
        assert_eq!(g.induced_subgraph(&path_part).edge_count(), 99);
        assert!(g.has_edge(1, 11) && g.has_edge(15, 16));
    }

    #[test]
    fn figure2_perfect_cube_clique_size() {
        // n = 1000: n^{2/3} = 100 exactly.
        let spec = GeneratorSpec::Figure2Composite { n: 1000 };
        let g = generate(&spec).unwrap();
        assert_eq!(g.vertex_count(), 1001 + 100 + 1_000_000);
    }

    #[test]
    fn circulant_is_regular() {
        for n in 3..14u64 {
            for d in 0..n {
                if d % 2 == 1 && n % 2 == 1 {
                    continue;
                }
                let g = generate(&GeneratorSpec::Circulant { n, degree: d }).unwrap();
                g.check_invariants().unwrap();
                assert!(g.degrees().iter().all(|&x| x as u64 == d), "n={n} d={d}");
            }
        }
        assert!(generate(&GeneratorSpec::Circulant { n: 5, degree: 3 }).is_err());
    }

    #[test]
    fn star_union_sizes() {
        let spec = GeneratorSpec::StarUnion {
            weights: vec![0.6, 0.3, 0.1, 0.0],
            n: 3000,
        };
        assert_eq!(spec.star_sizes().unwrap(), vec![1800, 900, 300]);
        let g = generate(&spec).unwrap();
        assert_eq!(g.vertex_count(), 3003);
        assert_eq!(&g.degree_sequence()[..3], &[1800, 900, 300]);
    }

    #[test]
    fn shifted_star_union_pads_weights() {
        let spec = GeneratorSpec::ShiftedStarUnion {
            weights: vec![0.5],
            n: 16,
            r: 2,
        };
        let sizes = spec.star_sizes().unwrap();
        assert_eq!(sizes.len(), 16);
        assert_eq!(sizes[0], 12);
        assert!(sizes[1..].iter().all(|&s| s == 4));
    }

    #[test]
    fn tadpole_and_copies() {
        let t = gen("tadpole");
        assert_eq!(t.degree_sequence(), vec![3, 2, 2, 1]);
        let c = gen("copies:3:tadpole");
        assert_eq!(c.vertex_count(), 12);
        assert_eq!(c.components().1, 3);
        let nested = gen("copies:2:copies:2:star:3");
        assert_eq!(nested.vertex_count(), 16);
    }

    #[test]
    fn erdos_renyi_is_seeded() {
        let a = gen("er:60:0.1:seed=7");
        let b = gen("er:60:0.1:seed=7");
        let c = gen("er:60:0.1:seed=8");
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "star:4",
            "star-union:3000:0.6,0.3,0.1",
            "star-union-shifted:100:2:0.6,0.3",
            "complete:7",
            "bipartite:3:5",
            "cycle:9",
            "path:4",
            "regular:10:4",
            "tadpole",
            "copies:5:star:3",
            "figure2:10",
            "er:100:0.05:seed=7",
        ] {
            let spec: GeneratorSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "bipartite:4".parse::<GeneratorSpec>().unwrap().to_string(),
            "bipartite:4:4"
        );
        assert!("nope:3".parse::<GeneratorSpec>().is_err());
        assert!("cycle:2".parse::<GeneratorSpec>().is_err());
        assert!("star".parse::<GeneratorSpec>().is_err());
    }
}
