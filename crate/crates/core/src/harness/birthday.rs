use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::coloring::monte_carlo;
use crate::error::Result;
use crate::graph::Graph;
use crate::limit::{limit_pmf, params_from_graph};
use crate::oracle::exact_pmf;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BirthdayMethod {
    Oracle,
    MonteCarlo { samples: u64, seed: u64 },
    Limit { theta_cut: usize, tail_eps: f64 },
}

/// `P(T > 0)`, the chance that some `r`-star is monochromatic.
pub fn birthday_probability(g: &Graph, r: u32, c: u32, method: BirthdayMethod) -> Result<f64> {
    match method {
        BirthdayMethod::Oracle => Ok(birthday_probability_exact(g, r, c)?.to_f64().unwrap_or(f64::NAN)),
        BirthdayMethod::MonteCarlo { samples, seed } => {
            Ok(1.0 - monte_carlo(g, r, c, samples, seed)?.frequency(0))
        }
        BirthdayMethod::Limit { theta_cut, tail_eps } => {
            let plug = params_from_graph(g, c, r, theta_cut)?;
            Ok(1.0 - limit_pmf(&plug.params, tail_eps)?.prob(0))
        }
    }
}

pub fn birthday_probability_exact(g: &Graph, r: u32, c: u32) -> Result<BigRational> {
    Ok(BigRational::one() - exact_pmf(g, r, c)?.prob(0))
}
