use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::params::LimitLawParams;
use crate::coloring::{parallel_histogram, EmpiricalDist};
use crate::error::{Error, Result};
use crate::math::binom_u128;
use crate::pmf::FloatPmf;

/// Poisson masses `P(X = 0..=T)` for the smallest `T` whose upper tail is
/// below `budget`, and that tail.
pub fn poisson_pmf(rate: f64, budget: f64) -> (Vec<f64>, f64) {
    if rate <= 0.0 {
        return (vec![1.0], 0.0);
    }
    let ln_rate = rate.ln();
    let mut terms = Vec::new();
    let mut lp = -rate;
    // Past the mode the remaining tail is at most p_t·q/(1−q), q = rate/(t+1).
    let rest = loop {
        let t = terms.len() as f64;
        let p = lp.exp();
        terms.push(p);
        let q = rate / (t + 2.0);
        if q < 1.0 {
            let bound = p * q / (1.0 - q);
            if bound < (budget * 1e-6).min(1e-18) {
                break bound;
            }
        }
        lp += ln_rate - (t + 1.0).ln();
    };
    let mut suffix = vec![0.0; terms.len() + 1];
    suffix[terms.len()] = rest;
    for t in (0..terms.len()).rev() {
        suffix[t] = suffix[t + 1] + terms[t];
    }
    let keep = (1..=terms.len()).find(|&len| suffix[len] < budget).unwrap_or(terms.len());
    terms.truncate(keep);
    (terms, suffix[keep])
}

/// Law of `C(Pois(θ), r)` truncated at upper tail `budget`.
pub fn pushforward_pmf(theta: f64, r: u32, budget: f64) -> Result<FloatPmf> {
    let (terms, tail) = poisson_pmf(theta, budget);
    let mut support = BTreeMap::new();
    for (t, p) in terms.into_iter().enumerate() {
        let v = binom_u128(t as u64, u64::from(r))
            .ok_or_else(|| Error::Overflow(format!("C({t}, {r}) overflows")))?;
        *support.entry(v).or_insert(0.0) += p;
    }
    Ok(FloatPmf::from_parts(support, tail))
}

fn scaled_poisson(rate: f64, k: u128, budget: f64) -> FloatPmf {
    let (terms, tail) = poisson_pmf(rate, budget);
    let support = terms.into_iter().enumerate().map(|(t, p)| (k * t as u128, p)).collect();
    FloatPmf::from_parts(support, tail)
}

fn convolve(a: &FloatPmf, b: &FloatPmf) -> FloatPmf {
    let mut out: BTreeMap<u128, f64> = BTreeMap::new();
    for (x, p) in a.iter() {
        for (y, q) in b.iter() {
            *out.entry(x + y).or_insert(0.0) += p * q;
        }
    }
    let keep = (1.0 - a.truncation_deficit()) * (1.0 - b.truncation_deficit());
    FloatPmf::from_parts(out, 1.0 - keep)
}

fn check_usable(p: &LimitLawParams) -> Result<()> {
    let ok = |x: f64| x.is_finite() && x >= 0.0;
    if p.r == 0 || !p.thetas.iter().copied().all(ok) || !p.lambdas.iter().copied().all(ok) || !ok(p.z1_rate) {
        return Err(Error::InvalidParameter(format!("unusable limit parameters {p:?}")));
    }
    Ok(())
}

fn linear_rates(p: &LimitLawParams) -> Vec<(u128, f64)> {
    (1..=p.lambdas.len().max(1))
        .map(|k| (k as u128, p.linear_rate(k)))
        .filter(|&(_, rate)| rate > 0.0)
        .collect()
}

/// The limit pmf by convolving one truncated component per θ atom and per
/// non-zero linear rate. The reported deficit is below `tail_eps`.
pub fn limit_pmf(p: &LimitLawParams, tail_eps: f64) -> Result<FloatPmf> {
    check_usable(p)?;
    if !(tail_eps > 0.0 && tail_eps < 1.0) {
        return Err(Error::InvalidParameter(format!("tail_eps must lie in (0, 1), got {tail_eps}")));
    }
    let thetas: Vec<f64> = p.thetas.iter().copied().filter(|&t| t > 0.0).collect();
    let linear = linear_rates(p);
    let parts = (thetas.len() + linear.len()).max(1);
    let budget = tail_eps / parts as f64;
    let mut acc = FloatPmf::point_mass(0);
    for &t in &thetas {
        acc = convolve(&acc, &pushforward_pmf(t, p.r, budget)?);
    }
    for &(k, rate) in &linear {
        acc = convolve(&acc, &scaled_poisson(rate, k, budget));
    }
    Ok(acc)
}

/// Raw moments `E[X^1..X^order]` of the limit, tightening the truncation
/// until they change by less than `1e-9` relatively.
pub fn limit_moments(p: &LimitLawParams, order: usize) -> Result<Vec<f64>> {
    if order == 0 {
        return Err(Error::InvalidParameter("moment order must be at least 1".into()));
    }
    let mut prev: Option<(usize, Vec<f64>)> = None;
    for exp in 8..=24 {
        let pmf = limit_pmf(p, 10f64.powi(-exp))?;
        let m = pmf.moments(order);
        if *pmf.truncation_deficit() == 0.0 {
            return Ok(m);
        }
        // A tighter budget that keeps the same truncation proves nothing.
        if prev.as_ref().is_some_and(|(len, _)| *len == pmf.support().len()) {
            continue;
        }
        if let Some((_, old)) = &prev {
            let stable = old
                .iter()
                .zip(&m)
                .all(|(a, b)| (a - b).abs() <= 1e-9 * b.abs().max(f64::MIN_POSITIVE));
            if stable {
                return Ok(m);
            }
        }
        prev = Some((pmf.support().len(), m));
    }
    Err(Error::Convergence(format!(
        "limit moments up to order {order} did not stabilize to 1e-9 relative change"
    )))
}

/// PGF of the linear part `Σ_k k·Z_k` at `s`.
pub fn pgf_linear(p: &LimitLawParams, s: f64) -> f64 {
    linear_rates(p)
        .into_iter()
        .map(|(k, rate)| rate * (s.powi(k as i32) - 1.0))
        .sum::<f64>()
        .exp()
}

fn poisson_draw<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> u64 {
    if rate <= 0.0 {
        return 0;
    }
    Poisson::new(rate).map_or(0, |d| d.sample(rng) as u64)
}

/// One draw of `Σ_v C(T_v, r) + Σ_k k·Z_k`.
pub fn sample_limit<R: Rng + ?Sized>(p: &LimitLawParams, rng: &mut R) -> u128 {
    let mut total: u128 = 0;
    for &t in &p.thetas {
        let x = poisson_draw(t, rng);
        total += binom_u128(x, u64::from(p.r)).unwrap_or(u128::MAX);
    }
    for k in 1..=p.lambdas.len() {
        total += k as u128 * u128::from(poisson_draw(p.linear_rate(k), rng));
    }
    total
}

/// Histogram of `samples` limit draws on the same per-sample streams as the
/// coloring engine.
pub fn sample_limit_many(
    p: &LimitLawParams,
    samples: u64,
    seed: u64,
    workers: Option<usize>,
) -> Result<EmpiricalDist> {
    check_usable(p)?;
    parallel_histogram(samples, seed, workers, || (), |_, rng| sample_limit(p, rng))
}
