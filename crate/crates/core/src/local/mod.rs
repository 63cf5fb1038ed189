//! Local algebra at the origin: standard bases for local orders, Milnor and
//! Tjurina numbers, monomial bases of the Milnor algebra and ideal membership
//! in the localized polynomial ring.

mod deform;
mod engine;

use std::collections::HashMap;

use thiserror::Error;

use crate::poly::{ExponentVector, MonomialOrder, PolyError, Polynomial, Rational};

pub use deform::{lowest_common_weights, tau_min_search, TauMinReport, TauMinSearch};
pub use engine::EngineLimit;
use engine::{Engine, Mono, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("the singularity is not isolated (quotient is infinite-dimensional)")]
    NonIsolated,
    #[error("the point is not a singular point (some partial derivative is a unit)")]
    NotSingular,
    #[error("the polynomial does not vanish at the point")]
    NotOnHypersurface,
    #[error("standard bases need a local monomial order")]
    NotLocalOrder,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Engine(#[from] EngineLimit),
}

/// A standard basis of an ideal of the localization at the origin.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    order: MonomialOrder,
    engine: Engine,
    generators: Vec<Polynomial>,
    standard_index: HashMap<Mono, usize>,
    standard_monomials: Option<Vec<ExponentVector>>,
}

/// Computes a standard basis with respect to a local order. Generators that
/// are units short-circuit to the whole ring.
pub fn standard_basis(
    generators: &[Polynomial],
    order: &MonomialOrder,
) -> Result<StandardBasis, LocalError> {
    if !order.is_local() {
        return Err(LocalError::NotLocalOrder);
    }
    let nvars = order.nvars();
    for g in generators {
        if g.nvars() != nvars {
            return Err(PolyError::DimensionMismatch {
                expected: nvars,
                found: g.nvars(),
            }
            .into());
        }
    }
    let ring = Ring::new(&order.weights())?;
    let gens = generators
        .iter()
        .map(|g| ring.encode(g))
        .collect::<Result<Vec<_>, _>>()?;
    let mut engine = Engine::compute(ring, gens);
    if engine.is_zero_dimensional() && engine.standard.is_none() {
        return Err(EngineLimit::QuotientTooLarge.into());
    }
    let mut standard_index = HashMap::new();
    let mut standard_monomials = None;
    if let Some(std) = engine.standard.as_mut() {
        engine::sort_local(std);
        standard_index = std.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        standard_monomials = Some(std.iter().map(|m| engine.ring.exponent(m)).collect());
    }
    let generators = engine.basis().map(|p| engine.ring.to_poly(p)).collect();
    Ok(StandardBasis {
        order: order.clone(),
        engine,
        generators,
        standard_index,
        standard_monomials,
    })
}

impl StandardBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    /// Basis elements (integer coefficients, scaled to be primitive).
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.engine
            .leads()
            .iter()
            .map(|m| self.engine.ring.exponent(m))
            .collect()
    }

    /// True if the ideal is the whole local ring.
    pub fn is_unit(&self) -> bool {
        self.engine.unit
    }

    /// True if the leading ideal contains a pure power of every variable.
    pub fn is_zero_dimensional(&self) -> bool {
        self.engine.is_zero_dimensional()
    }

    /// Monomials outside the leading ideal, largest (i.e. `1`) first; `None`
    /// if the quotient is infinite-dimensional.
    pub fn standard_monomials(&self) -> Option<&[ExponentVector]> {
        self.standard_monomials.as_deref()
    }

    /// Dimension of the local quotient ring.
    pub fn quotient_dim(&self) -> Option<usize> {
        self.standard_monomials.as_ref().map(Vec::len)
    }

    /// Weak normal form: zero exactly when `p` lies in the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, LocalError> {
        let e = self.engine.ring.encode(p)?;
        Ok(self.engine.ring.to_poly(&self.engine.nf_mora(e)))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, LocalError> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Coordinates of the class of `p` in the quotient, on the basis
    /// [`standard_monomials`](Self::standard_monomials).
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Rational>, LocalError> {
        if self.standard_monomials.is_none() {
            return Err(LocalError::NonIsolated);
        }
        let (e, factor) = self.engine.ring.encode_scaled(p)?;
        let coords = self
            .engine
            .coordinates(e, &self.standard_index)
            .expect("zero-dimensional");
        Ok(coords.into_iter().map(|c| c / &factor).collect())
    }
}

/// A hypersurface germ at the origin with a singular point there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGerm {
    f: Polynomial,
}

impl LocalGerm {
    /// Wraps `f`, checking `f(0) = 0` and that all partials vanish at `0`.
    pub fn new(f: Polynomial) -> Result<Self, LocalError> {
        let n = f.nvars();
        if f.coefficient(&ExponentVector::zero(n)) != Rational::from_integer(0.into()) {
            return Err(LocalError::NotOnHypersurface);
        }
        if f.terms().any(|(e, _)| e.degree() == 1) {
            return Err(LocalError::NotSingular);
        }
        Ok(Self { f })
    }

    /// Germ of `f` at `point`, translated to the origin.
    pub fn at_point(f: &Polynomial, point: &[Rational]) -> Result<Self, LocalError> {
        Self::new(f.translate_to_origin(point)?)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    /// Number of ambient variables `n + 1`.
    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Dimension `n` of the hypersurface germ.
    pub fn dimension(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn jacobian_ideal(&self) -> Vec<Polynomial> {
        self.f.gradient()
    }

    pub fn tjurina_ideal(&self) -> Vec<Polynomial> {
        let mut gens = vec![self.f.clone()];
        gens.extend(self.f.gradient());
        gens
    }

    /// Default local order (negative graded reverse lexicographic).
    pub fn default_order(&self) -> MonomialOrder {
        MonomialOrder::NegativeGradedReverseLex(self.nvars())
    }
}

/// Standard monomials of the Jacobian ideal; their count is `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorAlgebraBasis {
    pub monomials: Vec<ExponentVector>,
}

impl MilnorAlgebraBasis {
    pub fn mu(&self) -> usize {
        self.monomials.len()
    }
}

fn finite_quotient(
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<StandardBasis, LocalError> {
    let sb = standard_basis(gens, order)?;
    if sb.is_unit() {
        return Err(LocalError::NotSingular);
    }
    if sb.quotient_dim().is_none() {
        return Err(LocalError::NonIsolated);
    }
    Ok(sb)
}

pub fn jacobian_standard_basis(
    g: &LocalGerm,
    order: &MonomialOrder,
) -> Result<StandardBasis, LocalError> {
    finite_quotient(&g.jacobian_ideal(), order)
}

pub fn tjurina_standard_basis(
    g: &LocalGerm,
    order: &MonomialOrder,
) -> Result<StandardBasis, LocalError> {
    finite_quotient(&g.tjurina_ideal(), order)
}

/// `μ = dim O/(∂f)`.
pub fn milnor_number(g: &LocalGerm) -> Result<usize, LocalError> {
    milnor_number_with(g, &g.default_order())
}

pub fn milnor_number_with(g: &LocalGerm, order: &MonomialOrder) -> Result<usize, LocalError> {
    Ok(jacobian_standard_basis(g, order)?
        .quotient_dim()
        .expect("finite"))
}

/// `τ = dim O/(f, ∂f)`.
pub fn tjurina_number(g: &LocalGerm) -> Result<usize, LocalError> {
    tjurina_number_with(g, &g.default_order())
}

pub fn tjurina_number_with(g: &LocalGerm, order: &MonomialOrder) -> Result<usize, LocalError> {
    Ok(tjurina_standard_basis(g, order)?
        .quotient_dim()
        .expect("finite"))
}

pub fn milnor_basis(g: &LocalGerm) -> Result<MilnorAlgebraBasis, LocalError> {
    milnor_basis_with(g, &g.default_order())
}

pub fn milnor_basis_with(
    g: &LocalGerm,
    order: &MonomialOrder,
) -> Result<MilnorAlgebraBasis, LocalError> {
    let sb = jacobian_standard_basis(g, order)?;
    Ok(MilnorAlgebraBasis {
        monomials: sb.standard_monomials().expect("finite").to_vec(),
    })
}

/// Membership of `g` in the ideal generated by `ideal` in the localization
/// at the origin.
pub fn local_membership(g: &Polynomial, ideal: &[Polynomial]) -> Result<bool, LocalError> {
    let order = MonomialOrder::NegativeGradedReverseLex(g.nvars());
    standard_basis(ideal, &order)?.contains(g)
}
