//! Randomized search for the minimal Tjurina number in the μ-constant
//! stratum of a quasi-homogeneous germ.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{milnor_basis_with, milnor_number_with, tjurina_number_with, LocalError, LocalGerm};
use crate::poly::{ExponentVector, MonomialOrder, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMinSearch {
    pub samples: usize,
    pub seed: u64,
    /// Coefficients are drawn uniformly from `±1..=±max_coefficient`.
    pub max_coefficient: i64,
}

impl Default for TauMinSearch {
    fn default() -> Self {
        Self {
            samples: 32,
            seed: 0,
            max_coefficient: 9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMinReport {
    pub mu: usize,
    /// τ of the undeformed germ.
    pub tau: usize,
    pub tau_min: usize,
    /// Monomials of weighted degree above one in the Milnor basis.
    pub upper_monomials: Vec<ExponentVector>,
    /// τ of every sample, in sampling order.
    pub sample_taus: Vec<usize>,
    /// True if every sample had the same μ as the original germ.
    pub mu_constant: bool,
    /// A deformation attaining `tau_min`.
    pub witness: Polynomial,
}

/// Smallest positive integer vector proportional to `weights`.
pub fn lowest_common_weights(weights: &[Rational]) -> Vec<u32> {
    let l = weights
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let ints: Vec<num_bigint::BigInt> = weights
        .iter()
        .map(|w| (w * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_u32().expect("weights fit in u32"))
        .collect()
}

/// Samples deformations `f + Σ c_a x^a` over the Milnor-basis monomials `x^a`
/// of weighted degree above one and reports the smallest τ. Coefficients are
/// drawn sequentially from a seeded generator, so the result depends only on
/// the seed; the samples themselves are evaluated in parallel.
pub fn tau_min_search(
    g: &LocalGerm,
    weights: &[Rational],
    cfg: &TauMinSearch,
) -> Result<TauMinReport, LocalError> {
    let order = MonomialOrder::local_weighted(lowest_common_weights(weights));
    let mu = milnor_number_with(g, &order)?;
    let tau = tjurina_number_with(g, &order)?;
    let one = Rational::one();
    let upper: Vec<ExponentVector> = milnor_basis_with(g, &order)?
        .monomials
        .into_iter()
        .filter(|m| {
            let d: Rational = m
                .as_slice()
                .iter()
                .zip(weights)
                .map(|(&e, w)| w * Rational::from_integer(e.into()))
                .sum();
            d > one
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = if upper.is_empty() { 0 } else { cfg.samples };
    let deformations: Vec<Polynomial> = (0..n)
        .map(|_| {
            let mut f = g.polynomial().clone();
            for m in &upper {
                let mut c = rng.gen_range(1..=cfg.max_coefficient);
                if rng.gen_bool(0.5) {
                    c = -c;
                }
                f = &f + &Polynomial::monomial(m.clone(), Rational::from_integer(c.into()));
            }
            f
        })
        .collect();
    let results: Vec<(usize, usize)> = deformations
        .par_iter()
        .map(|f| {
            let germ = LocalGerm::new(f.clone())?;
            Ok((
                milnor_number_with(&germ, &order)?,
                tjurina_number_with(&germ, &order)?,
            ))
        })
        .collect::<Result<_, LocalError>>()?;
    let mu_constant = results.iter().all(|&(m, _)| m == mu);
    let mut tau_min = tau;
    let mut witness = g.polynomial().clone();
    for (f, &(m, t)) in deformations.iter().zip(&results) {
        if m == mu && t < tau_min {
            tau_min = t;
            witness = f.clone();
        }
    }
    Ok(TauMinReport {
        mu,
        tau,
        tau_min,
        upper_monomials: upper,
        sample_taus: results.into_iter().map(|(_, t)| t).collect(),
        mu_constant,
        witness,
    })
}
