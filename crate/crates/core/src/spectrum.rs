//! Spectra of quasi-homogeneous germs.
//!
//! The spectral number of a Milnor-basis monomial `x^a` is
//! `ℓ(a) = Σ (a_i + 1) w_i − 1`, so that the spectrum of a germ in `n + 1`
//! variables lies in `(−1, n)` and is symmetric about `(n − 1)/2`. Plane
//! curves have spectra symmetric about zero.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{rref, RationalMatrix};
use crate::local::{lowest_common_weights, milnor_basis_with, LocalError, LocalGerm};
use crate::poly::{ExponentVector, MonomialOrder, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("the germ is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("expected a germ of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// Positive rational weights with `Σ a_i w_i = 1` on the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Self {
        Self(weights)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weighted_degree(&self, m: &ExponentVector) -> Rational {
        m.as_slice()
            .iter()
            .zip(&self.0)
            .map(|(&e, w)| w * Rational::from_integer(e.into()))
            .sum()
    }

    /// Weighted local order with integer weights proportional to these.
    pub fn local_order(&self) -> MonomialOrder {
        MonomialOrder::local_weighted(lowest_common_weights(&self.0))
    }
}

/// Solves `Σ a_i w_i = 1` over the support of `f`. Returns `None` if the
/// system is inconsistent, underdetermined, or has a weight outside `(0, 1/2]`.
pub fn find_weights(f: &Polynomial) -> Option<WeightVector> {
    if f.is_zero() {
        return None;
    }
    let n = f.nvars();
    let rows: Vec<Vec<Rational>> = f
        .terms()
        .map(|(e, _)| {
            let mut row: Vec<Rational> = e
                .as_slice()
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect();
            row.push(Rational::one());
            row
        })
        .collect();
    let r = rref(&RationalMatrix::from_rows(rows));
    if r.pivots.len() != n || r.pivots.contains(&n) {
        return None;
    }
    let half = Rational::new(1.into(), 2.into());
    let mut w = vec![Rational::zero(); n];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        w[p] = row
            .iter()
            .find(|(j, _)| *j == n)
            .map(|(_, x)| x.clone())
            .unwrap_or_default();
    }
    w.iter()
        .all(|x| *x > Rational::zero() && *x <= half)
        .then_some(WeightVector(w))
}

/// A finite multiset of rational spectral numbers, tagged with the
/// dimension `n` of the germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    multiplicities: BTreeMap<Rational, usize>,
}

impl Spectrum {
    pub fn new(n: usize, numbers: impl IntoIterator<Item = Rational>) -> Self {
        let mut multiplicities = BTreeMap::new();
        for b in numbers {
            *multiplicities.entry(b).or_insert(0) += 1;
        }
        Self { n, multiplicities }
    }

    /// Dimension `n` of the germ (number of variables minus one).
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, b: &Rational) -> usize {
        self.multiplicities.get(b).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<Rational, usize> {
        &self.multiplicities
    }

    /// All spectral numbers in increasing order, repeated by multiplicity.
    pub fn numbers(&self) -> Vec<Rational> {
        self.multiplicities
            .iter()
            .flat_map(|(b, &d)| std::iter::repeat_n(b.clone(), d))
            .collect()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.multiplicities.keys().next()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.multiplicities.keys().next_back()
    }

    /// `d(b) = d(n − 1 − b)` for all `b`.
    pub fn is_symmetric(&self) -> bool {
        let c = Rational::from_integer(self.n.into()) - Rational::one();
        self.multiplicities
            .iter()
            .all(|(b, &d)| self.multiplicity(&(&c - b)) == d)
    }

    /// All numbers lie in the open interval `(−1, n)`.
    pub fn in_range(&self) -> bool {
        let lo = -Rational::one();
        let hi = Rational::from_integer(self.n.into());
        self.multiplicities.keys().all(|b| *b > lo && *b < hi)
    }

    /// Smallest spectral number `≥ x`.
    pub fn roundup(&self, x: &Rational) -> Option<Rational> {
        self.multiplicities
            .range(x.clone()..)
            .next()
            .map(|(b, _)| b.clone())
    }

    /// Number of spectral numbers `≥ x`.
    pub fn count_at_least(&self, x: &Rational) -> usize {
        self.multiplicities
            .range(x.clone()..)
            .map(|(_, &d)| d)
            .sum()
    }
}

/// Spectral number `ℓ(a) = Σ (a_i + 1) w_i − 1` of a monomial.
pub fn spectral_number(m: &ExponentVector, w: &WeightVector) -> Rational {
    m.as_slice()
        .iter()
        .zip(w.as_slice())
        .map(|(&e, wi)| wi * Rational::from_integer((e + 1).into()))
        .sum::<Rational>()
        - Rational::one()
}

pub fn spectrum_qh(g: &LocalGerm) -> Result<Spectrum, SpectrumError> {
    let w = find_weights(g.polynomial()).ok_or(SpectrumError::NotQuasiHomogeneous)?;
    spectrum_with_weights(g, &w)
}

/// Spectrum computed from the given weights. For a μ-constant deformation of
/// a quasi-homogeneous germ, passing the weights of the latter gives its
/// spectrum, which is constant along the family.
pub fn spectrum_with_weights(g: &LocalGerm, w: &WeightVector) -> Result<Spectrum, SpectrumError> {
    let basis = milnor_basis_with(g, &w.local_order())?;
    Ok(Spectrum::new(
        g.dimension(),
        basis.monomials.iter().map(|m| spectral_number(m, w)),
    ))
}

/// `s_0, …, s_n` with `s_k` counting spectral numbers in `(n − k − 1, n − k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeNumbers(pub Vec<usize>);

impl HodgeNumbers {
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub fn hodge_numbers(sp: &Spectrum) -> HodgeNumbers {
    let n = sp.dimension() as i64;
    let mut s = vec![0; sp.dimension() + 1];
    for (b, &d) in sp.multiplicities() {
        // n − k − 1 < b ≤ n − k  ⟺  k = n − ⌈b⌉
        let k = n - b.ceil().to_integer().try_into().unwrap_or(i64::MAX);
        if let Ok(k) = usize::try_from(k) {
            if k < s.len() {
                s[k] += d;
            }
        }
    }
    HodgeNumbers(s)
}

/// `p_g = s_2` of a quasi-homogeneous surface germ.
pub fn geometric_genus(g: &LocalGerm) -> Result<usize, SpectrumError> {
    if g.dimension() != 2 {
        return Err(SpectrumError::WrongDimension {
            expected: 2,
            found: g.dimension(),
        });
    }
    Ok(hodge_numbers(&spectrum_qh(g)?).get(2))
}

/// `Σ (m_i + 1) w_i − 1 + shift`.
pub fn v_degree(m: &ExponentVector, w: &WeightVector, extra_shift: &Rational) -> Rational {
    spectral_number(m, w) + extra_shift
}

/// One rung of the ladder `m·[fω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedDegree {
    pub monomial: ExponentVector,
    /// `γ + wdeg(m)` before rounding.
    pub raw: Rational,
    /// Smallest spectral value `≥ raw`, if any.
    pub induced: Option<Rational>,
}

/// V-filtration degrees induced on `f·Q^f` by the classes `m·[fω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedFiltration {
    /// `v_degree(0, w, 1)`, the V-degree of `f·ω` before rounding.
    pub raw_generator: Rational,
    /// Rounded generator degree `γ`; `None` if it exceeds the spectrum.
    pub generator: Option<Rational>,
    /// The variables' rungs `x_i·[fω]`.
    pub variables: Vec<InducedDegree>,
    /// Rungs for all Milnor-basis monomials.
    pub ladder: Vec<InducedDegree>,
    /// Spectral values strictly between `γ` and the lowest rung reached by a
    /// variable multiple that no rung attains.
    pub gaps: Vec<Rational>,
}

pub fn induced_filtration(g: &LocalGerm) -> Result<InducedFiltration, SpectrumError> {
    let w = find_weights(g.polynomial()).ok_or(SpectrumError::NotQuasiHomogeneous)?;
    let sp = spectrum_with_weights(g, &w)?;
    let basis = milnor_basis_with(g, &w.local_order())?.monomials;
    let nvars = g.nvars();
    let raw_generator = v_degree(&ExponentVector::zero(nvars), &w, &Rational::one());
    let generator = sp.roundup(&raw_generator);
    let Some(gamma) = generator.clone() else {
        return Ok(InducedFiltration {
            raw_generator,
            generator,
            variables: Vec::new(),
            ladder: Vec::new(),
            gaps: Vec::new(),
        });
    };
    let rung = |m: &ExponentVector| {
        let raw = &gamma + w.weighted_degree(m);
        InducedDegree {
            monomial: m.clone(),
            induced: sp.roundup(&raw),
            raw,
        }
    };
    let variables: Vec<InducedDegree> = (0..nvars)
        .map(|i| rung(&ExponentVector::unit(nvars, i)))
        .collect();
    let ladder: Vec<InducedDegree> = basis.iter().map(rung).collect();
    let upper = variables.iter().filter_map(|r| r.induced.clone()).min();
    let gaps = match upper {
        Some(upper) => sp
            .multiplicities()
            .range(gamma.clone()..upper)
            .map(|(b, _)| b.clone())
            .filter(|b| *b > gamma && !ladder.iter().any(|r| r.induced.as_ref() == Some(b)))
            .collect(),
        None => Vec::new(),
    };
    Ok(InducedFiltration {
        raw_generator,
        generator,
        variables,
        ladder,
        gaps,
    })
}

pub fn induced_filtration_gaps(g: &LocalGerm) -> Result<Vec<Rational>, SpectrumError> {
    Ok(induced_filtration(g)?.gaps)
}

/// Spectrum of `f(x) + g(y)`: all `α + β + 1`, dimension `n_f + n_g + 1`.
pub fn thom_sebastiani(a: &Spectrum, b: &Spectrum) -> Spectrum {
    let mut out = BTreeMap::new();
    for (x, &dx) in a.multiplicities() {
        for (y, &dy) in b.multiplicities() {
            *out.entry(x + y + Rational::one()).or_insert(0) += dx * dy;
        }
    }
    Spectrum {
        n: a.dimension() + b.dimension() + 1,
        multiplicities: out,
    }
}

fn require_curve(sp: &Spectrum) -> Result<(), SpectrumError> {
    if sp.dimension() != 1 {
        return Err(SpectrumError::WrongDimension {
            expected: 1,
            found: sp.dimension(),
        });
    }
    Ok(())
}

/// With `α_1 ≤ … ≤ α_δ` the positive spectral numbers of a curve, whether
/// `α_j + α_{δ−j+1} ≥ 1` for all `j`.
pub fn pairing_check(sp: &Spectrum) -> Result<bool, SpectrumError> {
    require_curve(sp)?;
    let pos: Vec<Rational> = sp
        .numbers()
        .into_iter()
        .filter(|b| *b > Rational::zero())
        .collect();
    let one = Rational::one();
    Ok(pos.iter().zip(pos.iter().rev()).all(|(a, b)| a + b >= one))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarianceCheck {
    pub mean: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// `(1/μ) Σ (α_j − mean)² ≤ (α_μ − α_1)/12`.
pub fn hertling_variance_check(sp: &Spectrum) -> Result<VarianceCheck, SpectrumError> {
    require_curve(sp)?;
    let nums = sp.numbers();
    let mu = Rational::from_integer(nums.len().into());
    let mean = nums.iter().sum::<Rational>() / &mu;
    let lhs = nums
        .iter()
        .map(|a| (a - &mean) * (a - &mean))
        .sum::<Rational>()
        / &mu;
    let rhs = (nums.last().cloned().unwrap_or_default()
        - nums.first().cloned().unwrap_or_default())
        / Rational::from_integer(12.into());
    let holds = lhs <= rhs;
    Ok(VarianceCheck {
        mean,
        lhs,
        rhs,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NemethiCheck {
    pub p_g: usize,
    pub mu: usize,
    /// `μ/6`.
    pub bound: Rational,
    pub holds: bool,
}

/// `p_g ≤ μ/6` for a quasi-homogeneous suspension `f(x, y) + z²`.
pub fn nemethi_check(g: &LocalGerm) -> Result<NemethiCheck, SpectrumError> {
    let sp = spectrum_qh(g)?;
    if sp.dimension() != 2 {
        return Err(SpectrumError::WrongDimension {
            expected: 2,
            found: sp.dimension(),
        });
    }
    let p_g = hodge_numbers(&sp).get(2);
    let mu = sp.mu();
    let bound = Rational::new(mu.into(), 6.into());
    let holds = Rational::from_integer(p_g.into()) <= bound;
    Ok(NemethiCheck {
        p_g,
        mu,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn germ(s: &str, vars: &[&str]) -> LocalGerm {
        LocalGerm::new(parse_polynomial(s, vars).unwrap()).unwrap()
    }

    const XY: [&str; 2] = ["x", "y"];
    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn weights() {
        let w = find_weights(germ("x^2+y^3", &XY).polynomial()).unwrap();
        assert_eq!(w.as_slice(), &[rat(1, 2), rat(1, 3)]);
        let w = find_weights(germ("x^5+y^11+z^2", &XYZ).polynomial()).unwrap();
        assert_eq!(w.as_slice(), &[rat(1, 5), rat(1, 11), rat(1, 2)]);
        assert!(find_weights(germ("x^2+y^3+z^7+x*y*z", &XYZ).polynomial()).is_none());
        // Underdetermined: a single equation for two weights.
        assert!(find_weights(germ("x*y", &XY).polynomial()).is_none());
    }

    #[test]
    fn small_spectra() {
        let sp = spectrum_qh(&germ("x^2+y^3", &XY)).unwrap();
        assert_eq!(sp.numbers(), vec![rat(-1, 6), rat(1, 6)]);
        let sp = spectrum_qh(&germ("x^2+y^2+z^2", &XYZ)).unwrap();
        assert_eq!(sp.numbers(), vec![rat(1, 2)]);
        assert_eq!(hodge_numbers(&sp).0, vec![0, 1, 0]);
        let sp = spectrum_qh(&germ("x^2+y^2", &XY)).unwrap();
        assert_eq!(sp.numbers(), vec![rat(0, 1)]);
    }

    #[test]
    fn e8_hodge_numbers() {
        let sp = spectrum_qh(&germ("x^2+y^3+z^5", &XYZ)).unwrap();
        assert_eq!(hodge_numbers(&sp).0, vec![0, 8, 0]);
    }

    #[test]
    fn genus() {
        assert_eq!(geometric_genus(&germ("x^3+y^10+z^19", &XYZ)).unwrap(), 39);
        assert_eq!(geometric_genus(&germ("x^5+y^11+z^2", &XYZ)).unwrap(), 4);
        assert_eq!(geometric_genus(&germ("x^2+y^2+z^2", &XYZ)).unwrap(), 0);
        assert!(matches!(
            geometric_genus(&germ("x^2+y^3", &XY)),
            Err(SpectrumError::WrongDimension { .. })
        ));
    }

    #[test]
    fn ladder() {
        let g = germ("x^5+y^11+z^2", &XYZ);
        let w = find_weights(g.polynomial()).unwrap();
        assert_eq!(
            v_degree(&ExponentVector::zero(3), &w, &rat(1, 1)),
            rat(87, 110)
        );
        assert_eq!(v_degree(&[0, 1, 0].into(), &w, &rat(1, 1)), rat(97, 110));
        let f = induced_filtration(&g).unwrap();
        assert_eq!(f.generator, Some(rat(89, 110)));
        assert_eq!(f.variables[0].induced, Some(rat(111, 110)));
        assert_eq!(f.variables[1].raw, rat(99, 110));
        assert_eq!(f.variables[1].induced, Some(rat(101, 110)));
        assert_eq!(f.gaps, vec![rat(91, 110), rat(93, 110)]);
        assert!(induced_filtration_gaps(&germ("x^2+y^2+z^2", &XYZ))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn suspension() {
        let a = spectrum_qh(&germ("x^2+y^3", &XY)).unwrap();
        let z2 = Spectrum::new(0, [rat(-1, 2)]);
        let ts = thom_sebastiani(&a, &z2);
        assert_eq!(ts.numbers(), vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(ts, spectrum_qh(&germ("x^2+y^3+z^2", &XYZ)).unwrap());
        assert_eq!(thom_sebastiani(&z2, &z2).numbers(), vec![rat(0, 1)]);
        assert_eq!(
            thom_sebastiani(&thom_sebastiani(&z2, &z2), &z2).numbers(),
            vec![rat(1, 2)]
        );
    }

    #[test]
    fn curve_inequalities() {
        let a2 = spectrum_qh(&germ("x^2+y^3", &XY)).unwrap();
        assert!(!pairing_check(&a2).unwrap());
        assert!(!pairing_check(&spectrum_qh(&germ("x^2+y^5", &XY)).unwrap()).unwrap());
        let synthetic = Spectrum::new(1, [rat(-3, 4), rat(-1, 2), rat(1, 2), rat(3, 4)]);
        assert!(pairing_check(&synthetic).unwrap());
        let v = hertling_variance_check(&a2).unwrap();
        assert_eq!(
            (v.lhs.clone(), v.rhs.clone(), v.holds),
            (rat(1, 36), rat(1, 36), true)
        );
        let v = hertling_variance_check(&spectrum_qh(&germ("x^2+y^5", &XY)).unwrap()).unwrap();
        assert_eq!((v.lhs, v.rhs, v.holds), (rat(1, 20), rat(1, 20), true));
        assert!(
            hertling_variance_check(&spectrum_qh(&germ("x^3+y^4", &XY)).unwrap())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn nemethi() {
        let c = nemethi_check(&germ("x^3+y^7+z^2", &XYZ)).unwrap();
        assert_eq!((c.p_g, c.mu, c.holds), (1, 12, true));
        let c = nemethi_check(&germ("x^2+y^3+z^2", &XYZ)).unwrap();
        assert_eq!((c.p_g, c.mu, c.holds), (0, 2, true));
        let c = nemethi_check(&germ("x^5+y^11+z^2", &XYZ)).unwrap();
        assert_eq!((c.p_g, c.bound, c.holds), (4, rat(40, 6), true));
    }
}
