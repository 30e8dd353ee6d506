//! Parallel sampling with per-sample random streams.
//!
//! Sample `i` of a run seeded with `s` draws from its own xoshiro256++ state,
//! derived from the counter pair `(s, i)` through the SplitMix64 finalizer.
//! A histogram therefore depends only on `(seed, samples)` and never on the
//! number of workers or on scheduling.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use super::empirical::EmpiricalDist;
use super::eval::{ColorSampler, StarEvaluator};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Maximum `samples × |V|` color draws per run.
pub const DEFAULT_MC_BUDGET: u128 = 100_000_000_000;

const BLOCK: u64 = 256;

#[derive(Clone, Copy, Debug)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; `None` uses rayon's global pool.
    pub workers: Option<usize>,
    pub budget: u128,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: None,
            budget: DEFAULT_MC_BUDGET,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }
}

pub type SampleRng = Xoshiro256PlusPlus;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random stream for sample `index` of a run seeded with `seed`.
pub fn sample_stream(seed: u64, index: u64) -> SampleRng {
    let key = mix64(seed ^ 0x6a09_e667_f3bc_c908);
    let mut bytes = [0u8; 32];
    for (lane, out) in bytes.chunks_exact_mut(8).enumerate() {
        let counter = index.wrapping_mul(4).wrapping_add(lane as u64);
        let word = mix64(key.wrapping_add(counter.wrapping_mul(GOLDEN)));
        out.copy_from_slice(&word.to_le_bytes());
    }
    SampleRng::from_seed(bytes)
}

/// Runs `draw` once per sample index on its own stream and histograms the
/// results. `init` builds per-worker scratch state.
pub fn parallel_histogram<S: Send, I, F>(
    samples: u64,
    seed: u64,
    workers: Option<usize>,
    init: I,
    draw: F,
) -> Result<EmpiricalDist>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &mut SampleRng) -> u128 + Sync + Send,
{
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let run = || {
        let blocks = samples.div_ceil(BLOCK);
        (0..blocks)
            .into_par_iter()
            .fold(
                || (init(), BTreeMap::<u128, u64>::new()),
                |(mut state, mut hist), b| {
                    for i in b * BLOCK..((b + 1) * BLOCK).min(samples) {
                        let mut rng = sample_stream(seed, i);
                        *hist.entry(draw(&mut state, &mut rng)).or_default() += 1;
                    }
                    (state, hist)
                },
            )
            .map(|(_, h)| h)
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            })
    };
    let counts = match workers {
        None => run(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run),
    };
    Ok(EmpiricalDist::new(counts, seed))
}

pub fn monte_carlo(g: &Graph, r: u32, c: u32, samples: u64, seed: u64) -> Result<EmpiricalDist> {
    monte_carlo_with(g, r, c, &McConfig::new(samples, seed))
}

/// Empirical distribution of `T(K_{1,r}, G)` over independent uniform
/// `c`-colorings.
pub fn monte_carlo_with(g: &Graph, r: u32, c: u32, cfg: &McConfig) -> Result<EmpiricalDist> {
    let draws = u128::from(cfg.samples) * g.vertex_count() as u128;
    if draws > cfg.budget {
        return Err(Error::Budget {
            what: "Monte-Carlo color draws",
            required: draws,
            budget: cfg.budget,
        });
    }
    let eval = StarEvaluator::new(g, r)?;
    let sampler = ColorSampler::new(c)?;
    let n = g.vertex_count();
    parallel_histogram(
        cfg.samples,
        cfg.seed,
        cfg.workers,
        || (vec![0u32; n], eval.scratch()),
        |(colors, scratch), rng| {
            sampler.fill(rng, colors);
            eval.eval(colors, scratch)
        },
    )
}
