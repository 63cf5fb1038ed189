//! The class test `τ = s_{n−1}`, Wahl's bound, the surface classification,
//! plane-curve inequalities and a catalog of named singularities.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::local::{
    milnor_number, tau_min_search, tjurina_number, tjurina_number_with, LocalError, LocalGerm,
    TauMinSearch,
};
use crate::poly::{parse_polynomial, parse_rational, ParseError, Polynomial, Rational};
use crate::spectrum::{
    find_weights, geometric_genus, hodge_numbers, spectrum_qh, spectrum_with_weights,
    SpectrumError, WeightVector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("no spectrum available: the germ is not quasi-homogeneous and no weights or s were supplied")]
    SpectrumUnavailable,
    #[error("mu + r - 1 = {0} is odd")]
    Parity(usize),
    #[error("expected a plane curve germ")]
    NotPlaneCurve,
    #[error("the germ is not homogeneous of degree m >= 3")]
    NotHomogeneousType,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// Resolution data of a normal surface singularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceResolutionData {
    pub p_g: usize,
    /// Sum of the genera of the exceptional curves.
    pub g: usize,
    /// First Betti number of the dual graph.
    pub b: usize,
}

/// Where `s_{n−1}` comes from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum SpectralSource {
    /// Weights of the germ itself (it must be quasi-homogeneous).
    #[default]
    Auto,
    /// Weights of a μ-constant family: the spectrum of the principal part
    /// (terms of weighted degree one) is used.
    Reference(WeightVector),
    Explicit(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub tau: usize,
    pub s_n_minus_1: usize,
    /// `τ − s_{n−1}`.
    pub defect: i64,
    pub in_class: bool,
}

/// Terms of `f` of weighted degree exactly one.
pub fn principal_part(f: &Polynomial, w: &WeightVector) -> Polynomial {
    let one = Rational::from_integer(1.into());
    f.filter_terms(|e| w.weighted_degree(e) == one)
}

/// `s_{n−1}` of the germ according to `source`.
pub fn s_n_minus_1(g: &LocalGerm, source: &SpectralSource) -> Result<usize, CriteriaError> {
    let n = g.dimension();
    let sp = match source {
        SpectralSource::Explicit(s) => return Ok(*s),
        SpectralSource::Auto => {
            let w = find_weights(g.polynomial()).ok_or(CriteriaError::SpectrumUnavailable)?;
            spectrum_with_weights(g, &w)?
        }
        SpectralSource::Reference(w) => {
            let f0 = LocalGerm::new(principal_part(g.polynomial(), w))?;
            spectrum_with_weights(&f0, w)?
        }
    };
    Ok(if n == 0 {
        0
    } else {
        hodge_numbers(&sp).get(n - 1)
    })
}

/// Compares `τ` with `s_{n−1}`; the germ is in the class iff they agree.
pub fn class_test(g: &LocalGerm, source: &SpectralSource) -> Result<ClassVerdict, CriteriaError> {
    // τ does not depend on the local order; the weighted one is much faster
    // on deformations of a quasi-homogeneous germ.
    let tau = match source {
        SpectralSource::Reference(w) => tjurina_number_with(g, &w.local_order())?,
        _ => tjurina_number(g)?,
    };
    let s = s_n_minus_1(g, source)?;
    let defect = tau as i64 - s as i64;
    Ok(ClassVerdict {
        tau,
        s_n_minus_1: s,
        defect,
        in_class: defect == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WahlCheck {
    /// `μ − (2p_g − 2g − b)`.
    pub bound: i64,
    pub holds: bool,
}

pub fn wahl_check(mu: usize, tau: usize, data: &SurfaceResolutionData) -> WahlCheck {
    let bound = mu as i64 - (2 * data.p_g as i64 - 2 * data.g as i64 - data.b as i64);
    WahlCheck {
        bound,
        holds: tau as i64 >= bound,
    }
}

/// `g = 0` and `τ` equals Wahl's bound.
pub fn surface_classification(mu: usize, tau: usize, data: &SurfaceResolutionData) -> bool {
    data.g == 0 && wahl_check(mu, tau, data).bound == tau as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiCheck {
    pub a: u32,
    pub mu: usize,
    pub p_g: usize,
    /// `3a(a+1)`.
    pub tau_expected: usize,
    /// `μ − 2p_g = 3a(a+1)`.
    pub consistent: bool,
    /// Smallest τ found by the randomized search, if it was run.
    pub tau_min: Option<usize>,
}

/// The germ `z² + x^{2a+1} + y^{2a+2}`.
pub fn zariski_germ(a: u32) -> LocalGerm {
    let f = parse_polynomial(
        &format!("z^2+x^{}+y^{}", 2 * a + 1, 2 * a + 2),
        &["x", "y", "z"],
    )
    .expect("valid");
    LocalGerm::new(f).expect("singular at the origin")
}

pub fn zariski_family_check(
    a: u32,
    search: Option<&TauMinSearch>,
) -> Result<ZariskiCheck, CriteriaError> {
    assert!(a >= 1, "a must be positive");
    let g = zariski_germ(a);
    let sp = spectrum_qh(&g)?;
    let mu = sp.mu();
    let p_g = hodge_numbers(&sp).get(2);
    let tau_expected = 3 * (a as usize) * (a as usize + 1);
    let consistent = mu as i64 - 2 * p_g as i64 == tau_expected as i64;
    let tau_min = match search {
        Some(cfg) => {
            let w = find_weights(g.polynomial()).expect("quasi-homogeneous");
            Some(tau_min_search(&g, w.as_slice(), cfg)?.tau_min)
        }
        None => None,
    };
    Ok(ZariskiCheck {
        a,
        mu,
        p_g,
        tau_expected,
        consistent,
        tau_min,
    })
}

/// Branch count, multiplicity and δ of a plane curve germ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveBranchData {
    pub r: usize,
    pub m: usize,
    pub delta: usize,
}

impl CurveBranchData {
    /// Derives `δ` from `μ = 2δ − r + 1` and `m` from the lowest degree of `f`.
    pub fn new(g: &LocalGerm, r: usize) -> Result<Self, CriteriaError> {
        if g.nvars() != 2 {
            return Err(CriteriaError::NotPlaneCurve);
        }
        let mu = milnor_number(g)?;
        let m = g.polynomial().order().unwrap_or(0) as usize;
        Ok(Self {
            r,
            m,
            delta: delta_from(mu, r)?,
        })
    }
}

fn delta_from(mu: usize, r: usize) -> Result<usize, CriteriaError> {
    let s = mu + r - 1;
    if !s.is_multiple_of(2) {
        return Err(CriteriaError::Parity(s));
    }
    Ok(s / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuchweitzGreuelCheck {
    pub delta: usize,
    /// `δ + m − r`.
    pub bound: i64,
    pub holds: bool,
    /// `δ − r + 1 = τ`.
    pub curve_class_equality: bool,
}

pub fn buchweitz_greuel_check(
    tau: usize,
    mu: usize,
    r: usize,
    m: usize,
) -> Result<BuchweitzGreuelCheck, CriteriaError> {
    let delta = delta_from(mu, r)?;
    let bound = delta as i64 + m as i64 - r as i64;
    Ok(BuchweitzGreuelCheck {
        delta,
        bound,
        holds: tau as i64 >= bound,
        curve_class_equality: delta as i64 - r as i64 + 1 == tau as i64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuspensionCheck {
    /// Number of spectral numbers `≥ −2/m`.
    pub dim_v: usize,
    pub delta: usize,
    /// `δ + 2m − 5`.
    pub bound: i64,
    pub holds: bool,
}

/// For a curve germ with all weights `1/m`, `m ≥ 3`, compares
/// `#{a : ℓ(a) ≥ −2/m}` with `δ + 2m − 5`; `δ` assumes `m` smooth branches.
pub fn suspension_bound_check(g: &LocalGerm, m: u32) -> Result<SuspensionCheck, CriteriaError> {
    if g.nvars() != 2 {
        return Err(CriteriaError::NotPlaneCurve);
    }
    let w = find_weights(g.polynomial()).ok_or(CriteriaError::NotHomogeneousType)?;
    let inv = Rational::new(1.into(), m.into());
    if m < 3 || w.as_slice().iter().any(|x| *x != inv) {
        return Err(CriteriaError::NotHomogeneousType);
    }
    let sp = spectrum_with_weights(g, &w)?;
    let dim_v = sp.count_at_least(&(-Rational::new(2.into(), m.into())));
    let delta = delta_from(sp.mu(), m as usize)?;
    let bound = delta as i64 + 2 * i64::from(m) - 5;
    Ok(SuspensionCheck {
        dim_v,
        delta,
        bound,
        holds: dim_v as i64 == bound,
    })
}

/// Closed form of the count in [`suspension_bound_check`] for `x^m + y^m`:
/// monomials `x^a y^b` with `a, b ≤ m − 2` and `a + b ≥ m − 4`.
pub fn suspension_count(m: u32) -> usize {
    let m = m as i64;
    let mut n = 0;
    for a in 0..=m - 2 {
        for b in 0..=m - 2 {
            if a + b >= m - 4 {
                n += 1;
            }
        }
    }
    n
}

/// A named singularity from the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub family: String,
    pub equation: String,
    #[serde(default = "default_variables")]
    pub variables: Vec<String>,
    pub r: Option<usize>,
    pub p_g: Option<usize>,
    pub g: Option<usize>,
    pub b: Option<usize>,
    pub mu: Option<usize>,
    pub tau: Option<usize>,
    /// Known `s_{n−1}` for germs without a quasi-homogeneous spectrum.
    pub s: Option<usize>,
    /// Weights of the principal part of a μ-constant deformation.
    pub weights: Option<Vec<String>>,
}

fn default_variables() -> Vec<String> {
    ["x", "y", "z"].map(String::from).to_vec()
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("entry {name}: {source}")]
    Equation { name: String, source: ParseError },
    #[error("entry {name}: bad weight {weight:?}")]
    Weight { name: String, weight: String },
    #[error("entry {name}: {source}")]
    Germ { name: String, source: LocalError },
}

impl CatalogEntry {
    pub fn polynomial(&self) -> Result<Polynomial, CatalogError> {
        parse_polynomial(&self.equation, &self.variables).map_err(|source| CatalogError::Equation {
            name: self.name.clone(),
            source,
        })
    }

    pub fn germ(&self) -> Result<LocalGerm, CatalogError> {
        LocalGerm::new(self.polynomial()?).map_err(|source| CatalogError::Germ {
            name: self.name.clone(),
            source,
        })
    }

    pub fn resolution(&self) -> Option<SurfaceResolutionData> {
        Some(SurfaceResolutionData {
            p_g: self.p_g?,
            g: self.g?,
            b: self.b?,
        })
    }

    pub fn reference_weights(&self) -> Result<Option<WeightVector>, CatalogError> {
        let Some(ws) = &self.weights else {
            return Ok(None);
        };
        let parsed = ws
            .iter()
            .map(|w| {
                parse_rational(w).ok_or_else(|| CatalogError::Weight {
                    name: self.name.clone(),
                    weight: w.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(WeightVector::new(parsed)))
    }

    /// The spectral source implied by the entry's fields.
    pub fn spectral_source(&self) -> Result<SpectralSource, CatalogError> {
        if let Some(s) = self.s {
            return Ok(SpectralSource::Explicit(s));
        }
        Ok(match self.reference_weights()? {
            Some(w) => SpectralSource::Reference(w),
            None => SpectralSource::Auto,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(rename = "germ", default)]
    pub entries: Vec<CatalogEntry>,
}

const BUILTIN: &str = include_str!("../data/catalog.toml");

impl Catalog {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN).expect("built-in catalog is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self, CatalogError> {
        Ok(toml::from_str(text)?)
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn family<'a>(&'a self, family: &'a str) -> impl Iterator<Item = &'a CatalogEntry> + 'a {
        self.entries.iter().filter(move |e| e.family == family)
    }
}

/// `p_g` of a quasi-homogeneous surface germ, or of the principal part for
/// the given reference weights.
pub fn geometric_genus_with(
    g: &LocalGerm,
    source: &SpectralSource,
) -> Result<usize, CriteriaError> {
    match source {
        SpectralSource::Reference(w) => {
            let f0 = LocalGerm::new(principal_part(g.polynomial(), w))?;
            Ok(hodge_numbers(&spectrum_with_weights(&f0, w)?).get(2))
        }
        _ => Ok(geometric_genus(g)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(s: &str) -> LocalGerm {
        LocalGerm::new(parse_polynomial(s, &["x", "y", "z"]).unwrap()).unwrap()
    }

    fn curve(s: &str) -> LocalGerm {
        LocalGerm::new(parse_polynomial(s, &["x", "y"]).unwrap()).unwrap()
    }

    const fn data(p_g: usize, g: usize, b: usize) -> SurfaceResolutionData {
        SurfaceResolutionData { p_g, g, b }
    }

    #[test]
    fn class_of_a1() {
        let v = class_test(&germ("x^2+y^2+z^2"), &SpectralSource::Auto).unwrap();
        assert_eq!(
            v,
            ClassVerdict {
                tau: 1,
                s_n_minus_1: 1,
                defect: 0,
                in_class: true
            }
        );
        assert_eq!(
            class_test(&germ("x^2+y^3+z^7+x*y*z"), &SpectralSource::Auto).unwrap_err(),
            CriteriaError::SpectrumUnavailable
        );
    }

    #[test]
    fn wahl() {
        assert_eq!(
            wahl_check(27, 23, &data(3, 0, 2)),
            WahlCheck {
                bound: 23,
                holds: true
            }
        );
        assert_eq!(
            wahl_check(1, 1, &data(0, 0, 0)),
            WahlCheck {
                bound: 1,
                holds: true
            }
        );
        assert_eq!(
            wahl_check(40, 34, &data(4, 0, 0)),
            WahlCheck {
                bound: 32,
                holds: true
            }
        );
    }

    #[test]
    fn classification() {
        assert!(surface_classification(1, 1, &data(0, 0, 0)));
        assert!(surface_classification(11, 10, &data(1, 0, 1)));
        assert!(!surface_classification(12, 11, &data(1, 0, 0)));
    }

    #[test]
    fn zariski() {
        for (a, mu, p_g, t) in [(1, 6, 0, 6), (2, 20, 1, 18), (3, 42, 3, 36)] {
            let z = zariski_family_check(a, None).unwrap();
            assert_eq!(
                (z.mu, z.p_g, z.tau_expected, z.consistent),
                (mu, p_g, t, true)
            );
        }
    }

    #[test]
    fn buchweitz_greuel() {
        let c = buchweitz_greuel_check(1, 1, 2, 2).unwrap();
        assert_eq!(
            (c.delta, c.bound, c.holds, c.curve_class_equality),
            (1, 1, true, false)
        );
        let c = buchweitz_greuel_check(2, 2, 1, 2).unwrap();
        assert_eq!(
            (c.delta, c.bound, c.holds, c.curve_class_equality),
            (1, 2, true, false)
        );
        let c = buchweitz_greuel_check(4, 4, 3, 3).unwrap();
        assert_eq!(
            (c.delta, c.bound, c.holds, c.curve_class_equality),
            (3, 3, true, false)
        );
        assert_eq!(
            buchweitz_greuel_check(1, 2, 2, 2).unwrap_err(),
            CriteriaError::Parity(3)
        );
    }

    #[test]
    fn suspension() {
        let c = suspension_bound_check(&curve("x^3+y^3"), 3).unwrap();
        assert_eq!((c.dim_v, c.delta, c.bound, c.holds), (4, 3, 4, true));
        let c = suspension_bound_check(&curve("x^4+y^4"), 4).unwrap();
        assert_eq!((c.dim_v, c.delta, c.bound, c.holds), (9, 6, 9, true));
        assert_eq!(suspension_count(4), 9);
        assert_eq!(
            suspension_bound_check(&curve("x^2+y^2"), 2).unwrap_err(),
            CriteriaError::NotHomogeneousType
        );
    }

    #[test]
    fn catalog_loads() {
        let c = Catalog::builtin();
        assert_eq!(c.family("ade").count(), 20);
        assert_eq!(c.family("cusp").count(), 3);
        let e12 = c.get("E12").unwrap();
        let v = class_test(&e12.germ().unwrap(), &e12.spectral_source().unwrap()).unwrap();
        assert_eq!((v.tau, v.s_n_minus_1, v.in_class), (11, 10, false));
        assert!(c.get("node").unwrap().resolution().is_none());
    }
}
