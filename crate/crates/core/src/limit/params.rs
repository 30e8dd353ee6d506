use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::factorial_f64;
use crate::stats::{class_counts_with, ClassCountMethod, ClassCountOptions, StarClassCounts};

/// Absolute slack allowed on a negative `z1_rate`.
pub const PARAM_SLACK: f64 = 1e-9;

/// Degree-to-color ratio below which a vertex is not treated as a θ atom.
pub const DEFAULT_THETA_THRESHOLD: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitLawParams {
    pub r: u32,
    /// Non-increasing.
    pub thetas: Vec<f64>,
    /// `λ_1, …, λ_{r+1}`.
    pub lambdas: Vec<f64>,
    pub z1_rate: f64,
    /// Set when these parameters knowingly disagree with a published value.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<String>,
}

impl LimitLawParams {
    /// Validated parameters; `z1_rate` is derived.
    pub fn new(r: u32, thetas: Vec<f64>, lambdas: Vec<f64>) -> Result<Self> {
        validate_params(Self {
            r,
            thetas,
            lambdas,
            z1_rate: 0.0,
            discrepancies: Vec::new(),
        })
    }

    pub fn pure_poisson(lambda: f64) -> Result<Self> {
        Self::new(1, Vec::new(), vec![lambda])
    }

    pub fn lambda(&self, k: usize) -> f64 {
        self.lambdas.get(k.wrapping_sub(1)).copied().unwrap_or(0.0)
    }

    /// Poisson rate of `Z_k`.
    pub fn linear_rate(&self, k: usize) -> f64 {
        if k == 1 {
            self.z1_rate
        } else {
            self.lambda(k)
        }
    }

    /// `Σ_k k·λ_k`.
    pub fn mean(&self) -> f64 {
        self.lambdas.iter().enumerate().map(|(i, l)| (i + 1) as f64 * l).sum()
    }

    /// `Σ_v θ_v^r / r!`.
    pub fn theta_mass(&self) -> f64 {
        theta_mass(&self.thetas, self.r)
    }
}

fn theta_mass(thetas: &[f64], r: u32) -> f64 {
    thetas.iter().map(|t| t.powi(r as i32)).sum::<f64>() / factorial_f64(u64::from(r))
}

fn check_rate(what: &str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{what} must be finite and non-negative, got {x}")))
    }
}

/// Checks the invariants and returns normalized parameters: θ sorted
/// non-increasing with zeros removed, `lambdas` padded to length `r+1` and
/// `z1_rate` recomputed.
pub fn validate_params(mut p: LimitLawParams) -> Result<LimitLawParams> {
    if p.r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let len = p.r as usize + 1;
    if p.lambdas.len() > len {
        if p.lambdas[len..].iter().any(|&l| l != 0.0) {
            return Err(Error::InvalidParameter(format!(
                "at most {len} lambdas for r = {}, got {}",
                p.r,
                p.lambdas.len()
            )));
        }
        p.lambdas.truncate(len);
    }
    p.lambdas.resize(len, 0.0);
    for (i, &l) in p.lambdas.iter().enumerate() {
        check_rate(&format!("lambda{}", i + 1), l)?;
    }
    for &t in &p.thetas {
        check_rate("theta", t)?;
    }
    p.thetas.retain(|&t| t > 0.0);
    p.thetas.sort_by(|a, b| b.total_cmp(a));
    let z1 = p.lambdas[0] - theta_mass(&p.thetas, p.r);
    if z1 < -PARAM_SLACK {
        return Err(Error::InvalidParameter(format!(
            "lambda1 = {} is below the theta star mass {}; z1_rate would be {z1}",
            p.lambdas[0],
            theta_mass(&p.thetas, p.r)
        )));
    }
    p.z1_rate = z1.max(0.0);
    Ok(p)
}

/// Plug-in parameters of a finite graph and what was left out.
#[derive(Clone, Debug, Serialize)]
pub struct PlugInParams {
    pub params: LimitLawParams,
    /// `λ_1 − Σθ^r/r!` before clamping at zero.
    pub raw_z1_rate: f64,
    /// `Σ (d_v/c)^r / r!` over ranks within the cut dropped by the threshold.
    pub dropped_tail_mass: f64,
    /// Vertices beyond the cut whose degree ratio reaches the threshold.
    pub excluded_big: usize,
    pub classes: StarClassCounts,
    pub warnings: Vec<String>,
}

pub fn params_from_graph(g: &Graph, c: u32, r: u32, theta_cut: usize) -> Result<PlugInParams> {
    let opts = ClassCountOptions {
        method: ClassCountMethod::Auto,
        ..Default::default()
    };
    params_from_graph_with(g, c, r, theta_cut, DEFAULT_THETA_THRESHOLD, &opts)
}

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(num.clone().into(), den.clone().into())
        .to_f64()
        .unwrap_or(f64::INFINITY)
}

pub fn params_from_graph_with(
    g: &Graph,
    c: u32,
    r: u32,
    theta_cut: usize,
    threshold: f64,
    opts: &ClassCountOptions,
) -> Result<PlugInParams> {
    if c == 0 {
        return Err(Error::InvalidParameter("need at least one color".into()));
    }
    let classes = class_counts_with(g, r, opts)?;
    plug_in_params(g, c, theta_cut, threshold, classes)
}

/// Plug-in parameters from already computed class counts of `g`.
pub fn plug_in_params(
    g: &Graph,
    c: u32,
    theta_cut: usize,
    threshold: f64,
    classes: StarClassCounts,
) -> Result<PlugInParams> {
    if c == 0 {
        return Err(Error::InvalidParameter("need at least one color".into()));
    }
    if !(threshold >= 0.0) {
        return Err(Error::InvalidParameter(format!("theta threshold must be non-negative, got {threshold}")));
    }
    let r = classes.r;
    let cr = BigUint::from(c).pow(r);
    let lambdas: Vec<f64> = (1..=r as usize + 1).map(|k| ratio(classes.lambda(k), &cr)).collect();

    let cf = f64::from(c);
    let fact = factorial_f64(u64::from(r));
    let degrees = g.degree_sequence();
    let mut thetas = Vec::new();
    let mut dropped_tail_mass = 0.0;
    for &d in degrees.iter().take(theta_cut) {
        let t = d as f64 / cf;
        if t >= threshold && t > 0.0 {
            thetas.push(t);
        } else {
            dropped_tail_mass += t.powi(r as i32) / fact;
        }
    }
    let excluded_big = degrees
        .iter()
        .skip(theta_cut)
        .take_while(|&&d| d > 0 && d as f64 / cf >= threshold)
        .count();

    let raw_z1_rate = lambdas[0] - theta_mass(&thetas, r);
    let mut warnings = Vec::new();
    if raw_z1_rate < 0.0 {
        warnings.push(format!("plug-in z1_rate {raw_z1_rate:.3e} is negative at finite n; clamped to 0"));
    }
    if excluded_big > 0 {
        warnings.push(format!(
            "{excluded_big} vertices beyond the theta cut have degree/c >= {threshold}"
        ));
    }
    if dropped_tail_mass > 0.0 {
        warnings.push(format!("theta tail below {threshold} dropped, mass {dropped_tail_mass:.3e}"));
    }
    let params = LimitLawParams {
        r,
        thetas,
        lambdas,
        z1_rate: raw_z1_rate.max(0.0),
        discrepancies: Vec::new(),
    };
    Ok(PlugInParams {
        params,
        raw_z1_rate,
        dropped_tail_mass,
        excluded_big,
        classes,
        warnings,
    })
}

/// Limit of the hub-plus-clique-plus-path composite with `n/c → κ` and `r = 2`.
///
/// The hub contributes `θ = (κ)`. The path contributes `κ²` to `λ_1`, the hub's
/// cherries another `κ²/2`, and the clique `κ²/6` to `λ_3`. Hence
/// `z1_rate = κ²` and the mean is `2κ²`.
pub fn figure2_params(kappa: f64) -> Result<LimitLawParams> {
    check_rate("kappa", kappa)?;
    let k2 = kappa * kappa;
    let mut p = LimitLawParams::new(2, vec![kappa], vec![1.5 * k2, 0.0, k2 / 6.0])?;
    p.discrepancies.push(format!(
        "published Z_1 rate is kappa^2/2 = {}; the class counts give kappa^2 = {}",
        k2 / 2.0,
        p.z1_rate
    ));
    Ok(p)
}

/// The published parameterization of the same example, `Z_1 ~ Pois(κ²/2)`.
pub fn figure2_literal_params(kappa: f64) -> Result<LimitLawParams> {
    check_rate("kappa", kappa)?;
    let k2 = kappa * kappa;
    LimitLawParams::new(2, vec![kappa], vec![k2, 0.0, k2 / 6.0])
}

/// Parses `"theta=1,0.5 lambda1=0.9 lambda3=0.2"`. An `r=R` token overrides
/// the given `r`.
pub fn parse_params(text: &str, r: u32) -> Result<LimitLawParams> {
    let bad = |tok: &str, why: &str| Error::InvalidParameter(format!("bad parameter `{tok}`: {why}"));
    let mut r = r;
    let mut thetas = Vec::new();
    let mut lambdas: Vec<f64> = Vec::new();
    for tok in text.split(|ch: char| ch.is_whitespace() || ch == ';').filter(|t| !t.is_empty()) {
        let (key, value) = tok.split_once('=').ok_or_else(|| bad(tok, "expected key=value"))?;
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(tok, &e.to_string()));
        match key {
            "r" => r = value.parse().map_err(|_| bad(tok, "r must be a positive integer"))?,
            "theta" | "thetas" => {
                for part in value.split(',').filter(|s| !s.is_empty()) {
                    thetas.push(num(part)?);
                }
            }
            _ => {
                let k: usize = key
                    .strip_prefix("lambda")
                    .and_then(|s| s.parse().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| bad(tok, "expected r, theta or lambdaK"))?;
                if lambdas.len() < k {
                    lambdas.resize(k, 0.0);
                }
                lambdas[k - 1] = num(value)?;
            }
        }
    }
    LimitLawParams::new(r, thetas, lambdas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn g(s: &str) -> Graph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let p = LimitLawParams::new(3, vec![], vec![1.5]).unwrap();
        assert_eq!(p.lambdas, vec![1.5, 0.0, 0.0, 0.0]);
        assert_eq!(p.z1_rate, 1.5);
        let star = LimitLawParams::new(2, vec![1.0], vec![0.5]).unwrap();
        assert_eq!(star.z1_rate, 0.0);
        assert!(LimitLawParams::new(2, vec![1.0], vec![0.3]).is_err());
        assert!(LimitLawParams::new(2, vec![], vec![-1.0]).is_err());
        assert!(LimitLawParams::new(1, vec![], vec![0.0, 0.0, 1.0]).is_err());
        let sorted = LimitLawParams::new(2, vec![0.2, 0.0, 0.7], vec![1.0]).unwrap();
        assert_eq!(sorted.thetas, vec![0.7, 0.2]);
    }

    #[test]
    fn slack_absorbs_rounding() {
        let p = LimitLawParams::new(2, vec![1.0], vec![0.5 - 1e-12]).unwrap();
        assert_eq!(p.z1_rate, 0.0);
    }

    #[test]
    fn star_plug_in() {
        let mut last = f64::INFINITY;
        for n in [10u64, 100, 1000] {
            let out = params_from_graph(&g(&format!("star:{n}")), n as u32, 2, 1).unwrap();
            let lambda1 = out.params.lambdas[0];
            assert!((lambda1 - ((n * (n - 1) / 2) as f64) / (n * n) as f64).abs() < 1e-15);
            assert_eq!(out.params.thetas, vec![1.0]);
            assert!((out.raw_z1_rate + 0.5 / n as f64).abs() < 1e-12);
            assert_eq!(out.params.z1_rate, 0.0);
            assert!(out.raw_z1_rate.abs() < last);
            last = out.raw_z1_rate.abs();
        }
    }

    #[test]
    fn complete_and_bipartite_plug_in() {
        let k = params_from_graph(&g("complete:60"), 185, 2, 0).unwrap();
        assert_eq!(k.params.lambdas[..2], [0.0, 0.0]);
        assert!((3.0 * k.params.lambdas[2] - 102660.0 / 34225.0).abs() < 1e-12);
        let b = params_from_graph(&g("bipartite:40"), 125, 2, 0).unwrap();
        assert!((b.params.lambdas[0] - 62400.0 / 15625.0).abs() < 1e-12);
        assert_eq!(b.params.lambdas[1..], [0.0, 0.0]);
        assert!(b.params.thetas.is_empty());
        assert_eq!(b.excluded_big, 80);
    }

    #[test]
    fn threshold_drops_small_thetas() {
        let out = params_from_graph(&g("star:10"), 1000, 2, 3).unwrap();
        assert!(out.params.thetas.is_empty());
        assert!((out.dropped_tail_mass - (0.01f64.powi(2) + 2.0 * 1e-6) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn figure2_values() {
        let p = figure2_params(1.0).unwrap();
        assert_eq!(p.z1_rate, 1.0);
        assert!((p.mean() - 2.0).abs() < 1e-15);
        assert!(!p.discrepancies.is_empty());
        let lit = figure2_literal_params(1.0).unwrap();
        assert_eq!(lit.z1_rate, 0.5);
        let tiny = figure2_params(1e-6).unwrap();
        assert!(tiny.mean() < 1e-11 && tiny.z1_rate < 1e-11);
    }

    #[test]
    fn parse_round_trip() {
        let p = parse_params("theta=1,0.5 lambda1=0.9 lambda3=0.2", 2).unwrap();
        assert_eq!(p.thetas, vec![1.0, 0.5]);
        assert_eq!(p.lambdas, vec![0.9, 0.0, 0.2]);
        assert!((p.z1_rate - (0.9 - 1.25 / 2.0)).abs() < 1e-15);
        assert_eq!(parse_params("r=3 lambda4=1", 2).unwrap().r, 3);
        assert!(parse_params("lambda0=1", 2).is_err());
        assert!(parse_params("theta", 2).is_err());
    }

    #[test]
    fn json_shape() {
        let p = LimitLawParams::new(2, vec![1.0], vec![0.75]).unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"r":2,"thetas":[1.0],"lambdas":[0.75,0.0,0.0],"z1_rate":0.25}"#);
        let back: LimitLawParams = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
