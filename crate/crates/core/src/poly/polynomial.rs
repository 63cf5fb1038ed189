use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, ExponentVector, MonomialOrder, PolyError, Rational};

/// Sparse multivariate polynomial with rational coefficients.
///
/// No stored coefficient is zero, so the zero polynomial has empty support.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, i), Rational::one())
    }

    pub fn monomial(exp: ExponentVector, c: Rational) -> Self {
        let nvars = exp.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(
                e.nvars(),
                nvars,
                "exponent length does not match variable count"
            );
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(e, c)| {
                (
                    ExponentVector::new(e.to_vec()),
                    Rational::from_integer(BigInt::from(*c)),
                )
            }),
        )
    }

    pub(crate) fn add_term(&mut self, exp: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zero(self.nvars))
    }

    /// Maximal total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// Minimal total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).min()
    }

    /// `Some(d)` if every term has total degree `d`. The zero polynomial is
    /// not considered homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|e| e.degree() == d).then_some(d)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms sorted decreasingly for `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&ExponentVector, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.mul(exp), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.check_point(point)?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn check_point(&self, point: &[Rational]) -> Result<(), PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(())
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k == 0 {
                continue;
            }
            let mut v = e.as_slice().to_vec();
            v[i] -= 1;
            out.terms.insert(
                ExponentVector::new(v),
                c * Rational::from_integer(BigInt::from(k)),
            );
        }
        Ok(out)
    }

    /// All first partial derivatives.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Checks `Σ x_i ∂_i F = deg(F)·F` for homogeneous `F`.
    pub fn euler_check(&self) -> Result<bool, PolyError> {
        let d = self.homogeneous_degree().ok_or(PolyError::NotHomogeneous)?;
        let mut lhs = Self::zero(self.nvars);
        for i in 0..self.nvars {
            let xi = Self::var(self.nvars, i);
            lhs = &lhs + &(&xi * &self.partial_derivative(i)?);
        }
        Ok(lhs == self.scale(&Rational::from_integer(BigInt::from(d))))
    }

    /// Returns `g` with `g(y) = f(y + p)`.
    pub fn translate_to_origin(&self, p: &[Rational]) -> Result<Self, PolyError> {
        self.check_point(p)?;
        if p.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        let shifted: Vec<Self> = (0..self.nvars)
            .map(|i| {
                let mut s = Self::var(self.nvars, i);
                s.add_term(ExponentVector::zero(self.nvars), p[i].clone());
                s
            })
            .collect();
        Ok(self.compose(&shifted))
    }

    /// Substitutes `x_i := subs[i]`; every substitute must live in the same
    /// number of variables.
    pub fn compose(&self, subs: &[Self]) -> Self {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target = subs.first().map_or(0, Self::nvars);
        // Cache powers of the substitutes.
        let mut powers: Vec<Vec<Self>> = subs
            .iter()
            .map(|s| vec![Self::one(s.nvars), s.clone()])
            .collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Applies the linear change of coordinates `x ↦ A x`, i.e. returns
    /// `f(A x)`; `matrix` is row-major `nvars × nvars`.
    pub fn linear_change(&self, matrix: &[Vec<Rational>]) -> Self {
        let n = self.nvars;
        let subs: Vec<Self> = matrix
            .iter()
            .map(|row| {
                Self::from_terms(
                    n,
                    row.iter()
                        .enumerate()
                        .map(|(j, a)| (ExponentVector::unit(n, j), a.clone())),
                )
            })
            .collect();
        self.compose(&subs)
    }

    /// Sets the variable `chart` to one, dropping it from the ring.
    pub fn dehomogenize(&self, chart: usize) -> Result<Self, PolyError> {
        if chart >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index: chart,
                nvars: self.nvars,
            });
        }
        if self.homogeneous_degree().is_none() {
            return Err(PolyError::NotHomogeneous);
        }
        Ok(self.dehomogenize_unchecked(chart))
    }

    pub(crate) fn dehomogenize_unchecked(&self, chart: usize) -> Self {
        Self::from_terms(
            self.nvars - 1,
            self.terms
                .iter()
                .map(|(e, c)| (e.without(chart), c.clone())),
        )
    }

    /// Drops every term for which `keep` is false.
    pub fn filter_terms(&self, mut keep: impl FnMut(&ExponentVector) -> bool) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Canonical printing with the given variable names: terms in decreasing
    /// graded reverse lexicographic order, `*` between all factors.
    pub fn to_string_with(&self, vars: &[impl AsRef<str>]) -> String {
        assert_eq!(vars.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let order = MonomialOrder::GradedReverseLex(self.nvars);
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let negative = c.is_negative();
            if negative {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_constant() {
                factors.push(format_rational(&abs));
            }
            for (i, &k) in e.as_slice().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(vars[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", vars[i].as_ref(), k)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), if negate { -c } else { c.clone() });
        }
        out
    }
}

/// Default variable names `x0, x1, …`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial, rat};

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, vars).unwrap()
    }

    #[test]
    fn partials() {
        let v = ["x", "y", "z"];
        assert_eq!(
            p("x^2+y^3", &v).partial_derivative(0).unwrap(),
            p("2*x", &v)
        );
        let f = p("x^7+x^4*y^2+x^2*y^4+y^7+z^2", &v);
        assert_eq!(f.partial_derivative(2).unwrap(), p("2*z", &v));
        assert!(p("y^3", &v).partial_derivative(0).unwrap().is_zero());
        assert!(matches!(
            f.partial_derivative(3),
            Err(PolyError::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn euler() {
        let v = ["a", "b", "c", "d"];
        assert!(p("a^4+b^4+c^4+d^4", &v).euler_check().unwrap());
        assert!(p("a*b^3", &v).euler_check().unwrap());
        assert_eq!(
            p("a^2+b^3", &v).euler_check(),
            Err(PolyError::NotHomogeneous)
        );
    }

    #[test]
    fn translation() {
        let f = p("x^2", &["x"]);
        assert_eq!(
            f.translate_to_origin(&[int(1)]).unwrap(),
            p("x^2+2*x+1", &["x"])
        );
        let g = p("x^2+y^2", &["x", "y"]);
        assert_eq!(g.translate_to_origin(&[int(0), int(0)]).unwrap(), g);
        let h = p("x*y", &["x", "y"]);
        assert_eq!(
            h.translate_to_origin(&[int(1), int(-1)]).unwrap(),
            p("x*y-x+y-1", &["x", "y"])
        );
        assert!(h.translate_to_origin(&[int(1)]).is_err());
    }

    #[test]
    fn dehomogenization() {
        let v = ["X0", "X1", "X2"];
        assert_eq!(
            p("X0^2+X1^2", &v).dehomogenize(0).unwrap(),
            p("1+x1^2", &["x1", "x2"])
        );
        assert_eq!(
            p("X0*X1-X2^2", &v).dehomogenize(0).unwrap(),
            p("x1-x2^2", &["x1", "x2"])
        );
        assert_eq!(p("X1^3", &v).dehomogenize(1).unwrap(), Polynomial::one(2));
        assert_eq!(
            p("X0+X1^2", &v).dehomogenize(0),
            Err(PolyError::NotHomogeneous)
        );
    }

    #[test]
    fn printing() {
        let v = ["x", "y"];
        assert_eq!(
            p("y^2 - 3/2 x y + x^2 - 1", &v).to_string_with(&v),
            "x^2-3/2*x*y+y^2-1"
        );
        assert_eq!(Polynomial::zero(2).to_string_with(&v), "0");
        assert_eq!(p("-x", &v).to_string_with(&v), "-x");
        assert_eq!(p("x", &v).eval(&[rat(1, 2), int(3)]).unwrap(), rat(1, 2));
    }
}
