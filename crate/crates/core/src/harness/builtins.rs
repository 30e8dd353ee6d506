//! Pre-wired experiments for the worked examples, each with its predicted
//! limit law.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::experiment::{ColorRule, Comparison, ExperimentSpec, NamedLaw, Rounding};
use crate::error::{Error, Result};
use crate::graph::{generate, GeneratorSpec};
use crate::limit::{figure2_literal_params, figure2_params, LimitLawParams};
use crate::math::factorial_f64;
use crate::stats::count_stars;

pub const BUILTIN_NAMES: [&str; 9] = [
    "star",
    "star-union",
    "star-union-shifted",
    "regular",
    "bipartite",
    "complete",
    "figure2",
    "tadpole-remark",
    "er",
];

const SAMPLES: u64 = 200_000;
const SEED: u64 = 1;
const STAR_WEIGHTS: [f64; 3] = [0.6, 0.3, 0.1];
const ER_P: f64 = 0.01;

/// Which of the three Erdős–Rényi regimes `(n, p)` targets. The cutoffs
/// are heuristics for a single finite `n`.
pub fn er_regime(n: u64, p: f64, r: u32) -> &'static str {
    let scale = (n as f64).powf(f64::from(r + 1) / f64::from(r)) * p;
    if p >= 0.05 {
        "(c) fixed p: linear combination of independent Poissons"
    } else if scale <= 10.0 {
        "(a) n^((r+1)/r) p bounded: T -> 0 in probability"
    } else {
        "(b) p -> 0, n^((r+1)/r) p -> infinity: Poisson"
    }
}

fn exact_mean(spec: &ExperimentSpec) -> Result<f64> {
    let g = generate(&spec.generator)?;
    let n_star = count_stars(&g, spec.r);
    let c = spec.colors.resolve(spec.generator.size_parameter(), &n_star, spec.r)?;
    let cr = BigUint::from(c).pow(spec.r).to_f64().unwrap_or(f64::INFINITY);
    Ok(n_star.to_f64().unwrap_or(f64::INFINITY) / cr)
}

fn lambda_at(r: u32, k: usize, value: f64) -> Vec<f64> {
    let mut l = vec![0.0; r as usize + 1];
    l[k - 1] = value;
    l
}

/// The experiment for a named example; `n` overrides its size parameter.
pub fn builtin_example(name: &str, n: Option<u64>) -> Result<ExperimentSpec> {
    let unknown = || Error::UnknownExample {
        name: name.to_string(),
        known: BUILTIN_NAMES.join(", "),
    };
    let by_n = ColorRule::Scaled {
        factor: 1.0,
        exponent: 1.0,
        rounding: Rounding::Round,
    };
    let limit = |gen: GeneratorSpec, r: u32, colors: ColorRule| {
        let mut s = ExperimentSpec::new(gen, r, colors, SAMPLES, SEED, Comparison::LimitLaw);
        s.name = Some(name.to_string());
        s
    };
    let weights = STAR_WEIGHTS.to_vec();
    let theta_mass = |r: u32| STAR_WEIGHTS.iter().map(|a| a.powi(r as i32)).sum::<f64>() / factorial_f64(r.into());

    let spec = match name {
        "star" => {
            let r = 2;
            let mut s = limit(GeneratorSpec::Star { leaves: n.unwrap_or(1000) }, r, by_n);
            s.theta_cut = 1;
            s.predicted = Some(LimitLawParams::new(r, vec![1.0], vec![1.0 / factorial_f64(r.into())])?);
            s.mean_tolerance = Some(0.01);
            s
        }
        "star-union" => {
            let r = 2;
            let gen = GeneratorSpec::StarUnion { weights: weights.clone(), n: n.unwrap_or(3000) };
            let mut s = limit(gen, r, by_n);
            s.theta_cut = weights.len();
            s.predicted = Some(LimitLawParams::new(r, weights, vec![theta_mass(r)])?);
            s.mean_tolerance = Some(0.02);
            s
        }
        "star-union-shifted" => {
            let r = 2;
            let gen = GeneratorSpec::ShiftedStarUnion { weights: weights.clone(), n: n.unwrap_or(1000), r };
            let mut s = limit(gen, r, by_n);
            s.theta_cut = weights.len();
            let lambda1 = theta_mass(r) + 1.0 / factorial_f64(r.into());
            s.predicted = Some(LimitLawParams::new(r, weights, vec![lambda1])?);
            s.mean_tolerance = Some(0.05);
            s
        }
        "regular" => {
            let gen = GeneratorSpec::Circulant { n: n.unwrap_or(20_000), degree: 4 };
            let mut s = limit(gen, 2, ColorRule::TargetMean { mean: 2.0, rounding: Rounding::Ceil });
            s.mean_tolerance = Some(1e-9);
            s.notes.push("reference is the plug-in law from the graph's class counts".into());
            s
        }
        "bipartite" => {
            let side = n.unwrap_or(40);
            // c = 125 at n = 40, keeping the mean fixed as n grows.
            let colors = ColorRule::Scaled {
                factor: 125.0 / 40f64.powf(1.5),
                exponent: 1.5,
                rounding: Rounding::Round,
            };
            let r = 2;
            let mut s = limit(GeneratorSpec::CompleteBipartite { left: side, right: side }, r, colors);
            let mean = exact_mean(&s)?;
            s.predicted = Some(LimitLawParams::new(r, vec![], vec![mean])?);
            s.mean_tolerance = Some(1e-9);
            s
        }
        "complete" => {
            let r = 2;
            let gen = GeneratorSpec::Complete { n: n.unwrap_or(60) };
            let mut s = limit(gen, r, ColorRule::TargetMean { mean: 3.0, rounding: Rounding::Ceil });
            let mean = exact_mean(&s)?;
            s.predicted = Some(LimitLawParams::new(r, vec![], lambda_at(r, r as usize + 1, mean / f64::from(r + 1)))?);
            s.mean_tolerance = Some(1e-9);
            s
        }
        "figure2" => {
            let size = n.unwrap_or(300);
            let mut s = limit(GeneratorSpec::Figure2Composite { n: size }, 2, by_n);
            s.theta_cut = 1;
            s.tolerance = Some(0.07);
            s.predicted = Some(figure2_params(1.0)?);
            s.alternatives.push(NamedLaw {
                label: "published-z1".into(),
                params: figure2_literal_params(1.0)?,
            });
            s.mean_tolerance = Some(0.05);
            s
        }
        "tadpole-remark" => {
            let count = n.unwrap_or(10_000);
            let inner = if count % 2 == 1 {
                GeneratorSpec::Star { leaves: 3 }
            } else {
                GeneratorSpec::Tadpole31
            };
            let gen = GeneratorSpec::DisjointCopies { inner: Box::new(inner), count };
            let colors = ColorRule::Scaled {
                factor: 1.0,
                exponent: 1.0 / 3.0,
                rounding: Rounding::Floor,
            };
            let r = 3;
            let mut s = limit(gen, r, colors);
            let mean = exact_mean(&s)?;
            s.predicted = Some(LimitLawParams::new(r, vec![], vec![mean])?);
            s.mean_tolerance = Some(1e-9);
            s.notes.push("odd n uses claws, even n uses (3,1)-tadpoles; each copy holds one 3-star".into());
            s.notes.push("reference is Pois(n/c^3), whose rate tends to 1".into());
            s
        }
        "er" => {
            let size = n.unwrap_or(2000);
            let r = 2;
            let gen = GeneratorSpec::ErdosRenyi { n: size, p: ER_P, seed: SEED };
            let mut s = limit(gen, r, ColorRule::TargetMean { mean: 2.0, rounding: Rounding::Ceil });
            s.mean_tolerance = Some(1e-9);
            s.notes.push(format!("regime {}", er_regime(size, ER_P, r)));
            s.notes.push("conditional on the realized graph; reference is its plug-in law".into());
            s
        }
        _ => return Err(unknown()),
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds() {
        for name in BUILTIN_NAMES {
            let s = builtin_example(name, None).unwrap();
            assert_eq!(s.name.as_deref(), Some(name));
        }
        match builtin_example("nope", None) {
            Err(Error::UnknownExample { known, .. }) => assert!(known.contains("tadpole-remark")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn predicted_means_match_the_identity() {
        for name in BUILTIN_NAMES {
            let s = builtin_example(name, None).unwrap();
            if let (Some(p), Some(tol)) = (&s.predicted, s.mean_tolerance) {
                let m = exact_mean(&s).unwrap();
                assert!((p.mean() - m).abs() <= tol * m, "{name}: {} vs {m}", p.mean());
            }
        }
    }

    #[test]
    fn tadpole_remark_colors() {
        let s = builtin_example("tadpole-remark", None).unwrap();
        assert_eq!(s.colors.resolve(10_000, &BigUint::from(0u8), 3).unwrap(), 21);
        assert!(s.generator.to_string().contains("tadpole"));
        let odd = builtin_example("tadpole-remark", Some(9999)).unwrap();
        assert!(odd.generator.to_string().contains("star:3"));
    }

    #[test]
    fn bipartite_uses_125_colors() {
        let s = builtin_example("bipartite", None).unwrap();
        assert_eq!(s.colors.resolve(40, &BigUint::from(0u8), 2).unwrap(), 125);
        assert!((s.predicted.unwrap().lambdas[0] - 62400.0 / 15625.0).abs() < 1e-12);
    }

    #[test]
    fn er_regimes() {
        assert!(er_regime(2000, 0.01, 2).starts_with("(b)"));
        assert!(er_regime(2000, 0.5, 2).starts_with("(c)"));
        assert!(er_regime(2000, 1e-5, 2).starts_with("(a)"));
    }
}
