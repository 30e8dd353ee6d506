use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::binom_u128;
use crate::stats::count_stars_u128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub c: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, c: u32) -> Result<Self> {
        if c == 0 || colors.iter().any(|&x| x >= c) {
            return Err(Error::InvalidParameter(format!(
                "colors must lie in 0..{c}"
            )));
        }
        Ok(Self { colors, c })
    }
}

/// Exact uniform draws from `0..c` by multiply-and-shift with rejection.
/// Palettes of at most 2^16 colors consume 16 random bits per vertex.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ColorSampler {
    c: u32,
    reject_below: u32,
}

impl ColorSampler {
    pub(crate) fn new(c: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParameter("need at least one color".into()));
        }
        let reject_below = if c <= 1 << 16 {
            ((1u32 << 16) - c) % c
        } else {
            c.wrapping_neg() % c
        };
        Ok(Self { c, reject_below })
    }

    #[inline]
    fn narrow<R: Rng + ?Sized>(&self, lane: u16, rng: &mut R) -> u32 {
        let mut m = u32::from(lane) * self.c;
        while (m & 0xffff) < self.reject_below {
            m = (rng.next_u32() & 0xffff) * self.c;
        }
        m >> 16
    }

    #[inline]
    fn wide<R: Rng + ?Sized>(&self, x: u32, rng: &mut R) -> u32 {
        let mut m = u64::from(x) * u64::from(self.c);
        while (m as u32) < self.reject_below {
            m = u64::from(rng.next_u32()) * u64::from(self.c);
        }
        (m >> 32) as u32
    }

    /// Overwrites `out` with independent uniform colors.
    pub(crate) fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [u32]) {
        if self.c > 1 << 16 {
            for x in out.iter_mut() {
                let bits = rng.next_u32();
                *x = self.wide(bits, rng);
            }
            return;
        }
        let mut chunks = out.chunks_exact_mut(4);
        for chunk in &mut chunks {
            let bits = rng.next_u64();
            let mut low_min = u32::MAX;
            for (i, x) in chunk.iter_mut().enumerate() {
                let m = ((bits >> (16 * i)) & 0xffff) as u32 * self.c;
                low_min = low_min.min(m & 0xffff);
                *x = m >> 16;
            }
            if low_min < self.reject_below {
                for (i, x) in chunk.iter_mut().enumerate() {
                    *x = self.narrow((bits >> (16 * i)) as u16, rng);
                }
            }
        }
        let tail = chunks.into_remainder();
        if !tail.is_empty() {
            let bits = rng.next_u64();
            for (i, x) in tail.iter_mut().enumerate() {
                *x = self.narrow((bits >> (16 * i)) as u16, rng);
            }
        }
    }
}

/// Colors every vertex independently and uniformly from `0..c`.
pub fn sample_coloring<R: Rng + ?Sized>(g: &Graph, c: u32, rng: &mut R) -> Result<Coloring> {
    let mut colors = vec![0; g.vertex_count()];
    ColorSampler::new(c)?.fill(rng, &mut colors);
    Ok(Coloring { colors, c })
}

/// Evaluates `T(K_{1,r}, G) = Σ_v C(m_v, r)` where `m_v` counts the neighbors
/// of `v` sharing its color. One pass over the edge list bumps `m` at both
/// endpoints of every monochromatic edge; only touched vertices are summed.
#[derive(Clone, Debug)]
pub struct StarEvaluator {
    r: u32,
    vertex_count: usize,
    /// Edges as consecutive `(u, v)` pairs.
    edges: Vec<u32>,
    table: Vec<u128>,
}

/// Per-worker buffers for [`StarEvaluator::eval`].
#[derive(Clone, Debug, Default)]
pub struct EvalScratch {
    same: Vec<u32>,
    touched: Vec<u32>,
}

impl StarEvaluator {
    /// Fails when `N(K_{1,r}, G)` (the largest possible `T`) overflows `u128`.
    pub fn new(g: &Graph, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be at least 1".into()));
        }
        if count_stars_u128(g, r).is_none() {
            return Err(Error::Overflow(format!(
                "star count for r = {r} exceeds u128"
            )));
        }
        let table = (0..=g.max_degree() as u64)
            .map(|m| binom_u128(m, r.into()).expect("bounded by the star count"))
            .collect();
        let edges = g.edges().flat_map(|(u, v)| [u, v]).collect();
        Ok(Self {
            r,
            vertex_count: g.vertex_count(),
            edges,
            table,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn scratch(&self) -> EvalScratch {
        EvalScratch {
            same: vec![0; self.vertex_count],
            touched: Vec::new(),
        }
    }

    #[inline]
    pub fn eval(&self, colors: &[u32], scratch: &mut EvalScratch) -> u128 {
        assert_eq!(colors.len(), self.vertex_count);
        let EvalScratch { same, touched } = scratch;
        same.resize(self.vertex_count, 0);
        for e in self.edges.chunks_exact(2) {
            let (u, v) = (e[0] as usize, e[1] as usize);
            if colors[u] == colors[v] {
                for w in [u, v] {
                    if same[w] == 0 {
                        touched.push(w as u32);
                    }
                    same[w] += 1;
                }
            }
        }
        let mut total = 0u128;
        for &w in touched.iter() {
            total += self.table[same[w as usize] as usize];
            same[w as usize] = 0;
        }
        touched.clear();
        total
    }
}

/// One-shot evaluation of `T` for a coloring.
pub fn eval_t(g: &Graph, r: u32, col: &Coloring) -> Result<u128> {
    if col.colors.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "coloring has {} entries for {} vertices",
            col.colors.len(),
            g.vertex_count()
        )));
    }
    let eval = StarEvaluator::new(g, r)?;
    Ok(eval.eval(&col.colors, &mut eval.scratch()))
}
