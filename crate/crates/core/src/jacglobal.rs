//! Graded Jacobian rings of projective hypersurfaces `X = V(F) ⊂ P^{n+1}`
//! with isolated singularities, and the evaluation map from `R_{2d−n−2}`
//! onto the local Tjurina algebras.

use std::collections::HashMap;

use num_integer::binomial;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{rank, rank_multimodular, rref, RationalMatrix};
use crate::local::{milnor_number, tjurina_standard_basis, LocalError, LocalGerm, StandardBasis};
use crate::poly::{
    format_rational, parse_rational, ExponentVector, PolyError, Polynomial, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobalError {
    #[error("F must be homogeneous")]
    NotHomogeneous,
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("G must have the same degree as F")]
    DegreeMismatch,
    #[error("singular point {index}: {source}")]
    Point { index: usize, source: LocalError },
    #[error("singular point {index}: chart {chart} out of range")]
    ChartOutOfRange { index: usize, chart: usize },
    #[error("singular point {index}: expected {expected} affine coordinates, found {found}")]
    CoordinateCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("singular points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("H^0 of logarithmic n-forms is {0}, expected 0")]
    PrecondH0(usize),
    #[error("singular list incomplete: Jacobian ring stabilizes to {stable}, listed points give {listed}")]
    IncompleteSingularList { stable: usize, listed: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `dim S_k = C(k + nvars − 1, nvars − 1)`, zero for negative `k`.
pub fn graded_dim_s(k: i64, nvars: usize) -> usize {
    if k < 0 || nvars == 0 {
        return usize::from(k == 0);
    }
    binomial(k as usize + nvars - 1, nvars - 1)
}

fn monomial_index(nvars: usize, k: i64) -> (Vec<ExponentVector>, HashMap<ExponentVector, usize>) {
    let list = if k < 0 {
        Vec::new()
    } else {
        ExponentVector::all_of_degree(nvars, k as u32)
    };
    let index = list
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    (list, index)
}

fn homogeneous(f: &Polynomial) -> Result<u32, GlobalError> {
    let d = f.homogeneous_degree().ok_or(GlobalError::NotHomogeneous)?;
    if d < 2 {
        return Err(GlobalError::DegreeTooSmall);
    }
    Ok(d)
}

/// Rows spanning `(gens)_k` inside `S_k`, each `m·g` for `m` of degree `k − deg g`.
fn span_rows(
    gens: &[Polynomial],
    k: i64,
    index: &HashMap<ExponentVector, usize>,
) -> Vec<Vec<(usize, Rational)>> {
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.homogeneous_degree() else {
            continue;
        };
        let (mults, _) = monomial_index(g.nvars(), k - i64::from(dg));
        for m in &mults {
            rows.push(
                g.terms()
                    .map(|(e, c)| (index[&e.mul(m)], c.clone()))
                    .collect(),
            );
        }
    }
    rows
}

fn jacobian_matrix(f: &Polynomial, k: i64) -> (RationalMatrix, Vec<ExponentVector>) {
    let (list, index) = monomial_index(f.nvars(), k);
    let grad: Vec<Polynomial> = f.gradient().into_iter().filter(|g| !g.is_zero()).collect();
    (
        RationalMatrix::from_sparse_rows(list.len(), span_rows(&grad, k, &index)),
        list,
    )
}

/// `dim J(F)_k`.
pub fn jacobian_ideal_dim(f: &Polynomial, k: i64) -> Result<usize, GlobalError> {
    homogeneous(f)?;
    Ok(rank_multimodular(&jacobian_matrix(f, k).0))
}

/// `dim R_k = dim S_k − dim J(F)_k`.
pub fn jacobian_ring_dim(f: &Polynomial, k: i64) -> Result<usize, GlobalError> {
    Ok(graded_dim_s(k, f.nvars()) - jacobian_ideal_dim(f, k)?)
}

/// `dim R_k` for several degrees, computed in parallel.
pub fn jacobian_ring_dims(f: &Polynomial, ks: &[i64]) -> Result<Vec<usize>, GlobalError> {
    homogeneous(f)?;
    ks.par_iter().map(|&k| jacobian_ring_dim(f, k)).collect()
}

/// Monomials whose classes form a basis of `R_k`.
pub fn jacobian_ring_basis(f: &Polynomial, k: i64) -> Result<Vec<ExponentVector>, GlobalError> {
    homogeneous(f)?;
    let (m, list) = jacobian_matrix(f, k);
    let r = rref(&m);
    let mut pivot = vec![false; list.len()];
    for &p in &r.pivots {
        pivot[p] = true;
    }
    Ok(list
        .into_iter()
        .zip(pivot)
        .filter(|(_, p)| !p)
        .map(|(e, _)| e)
        .collect())
}

/// Coefficients of `(1 + t + … + t^{d−2})^{n+2}`.
pub fn hilbert_series_smooth(d: u32, n: usize) -> Vec<u64> {
    assert!(d >= 2, "degree must be at least 2");
    let base = vec![1u64; d as usize - 1];
    let mut out = vec![1u64];
    for _ in 0..n + 2 {
        let mut next = vec![0u64; out.len() + base.len() - 1];
        for (i, a) in out.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        out = next;
    }
    out
}

/// `C(2d−1, n+1) − (n+2)·C(d, n+1)`.
pub fn c_d(d: u32, n: usize) -> i64 {
    let d = d as i64;
    let n = n as i64;
    let c = |a: i64, b: i64| if b > a { 0 } else { binomial(a, b) };
    c(2 * d - 1, n + 1) - (n + 2) * c(d, n + 1)
}

/// `dim ker(h) − dim S_{d−n−2}` for
/// `h: S_{d−n−1}^{⊕(n+2)} → S_{2d−n−2} / F·S_{d−n−2}`, `(A_i) ↦ Σ A_i ∂_i F`.
pub fn h0_log(f: &Polynomial) -> Result<usize, GlobalError> {
    let d = i64::from(homogeneous(f)?);
    let nv = f.nvars();
    let n = nv as i64 - 2;
    let target = 2 * d - n - 2;
    let (list, index) = monomial_index(nv, target);
    let domain = nv * graded_dim_s(d - n - 1, nv);
    let f_mult = graded_dim_s(d - n - 2, nv);
    // Rows: images of the domain basis, then F times S_{d−n−2}.
    let mut rows = Vec::new();
    for g in f.gradient() {
        let (mults, _) = monomial_index(nv, d - n - 1);
        for m in &mults {
            rows.push(
                g.terms()
                    .map(|(e, c)| (index[&e.mul(m)], c.clone()))
                    .collect(),
            );
        }
    }
    rows.extend(span_rows(std::slice::from_ref(f), target, &index));
    let combined = rank_multimodular(&RationalMatrix::from_sparse_rows(list.len(), rows));
    let rank_h = combined - f_mult;
    Ok(domain - rank_h - f_mult)
}

/// A verified singular point of a projective hypersurface.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    /// Homogeneous coordinate set to one.
    pub chart: usize,
    /// Affine coordinates in the chart (the remaining variables, in order).
    pub coords: Vec<Rational>,
    pub germ: LocalGerm,
    pub mu: usize,
    pub tau: usize,
    tjurina: StandardBasis,
}

impl SingularPoint {
    /// Homogeneous coordinates with a one in position `chart`.
    pub fn projective(&self) -> Vec<Rational> {
        let mut p = self.coords.clone();
        p.insert(self.chart, Rational::from_integer(1.into()));
        p
    }

    pub fn tjurina_basis(&self) -> &StandardBasis {
        &self.tjurina
    }
}

/// Chart and affine coordinates of a projective point: the first nonzero
/// homogeneous coordinate is scaled to one.
pub fn affine_chart(point: &[Rational]) -> Option<(usize, Vec<Rational>)> {
    let chart = point
        .iter()
        .position(|c| *c != Rational::from_integer(0.into()))?;
    let s = point[chart].clone();
    let coords = point
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != chart)
        .map(|(_, c)| c / &s)
        .collect();
    Some((chart, coords))
}

/// `F` together with its verified singular points.
#[derive(Clone, Debug)]
pub struct HypersurfaceRecord {
    pub f: Polynomial,
    pub d: u32,
    /// Dimension of `X`.
    pub n: usize,
    pub points: Vec<SingularPoint>,
}

impl HypersurfaceRecord {
    /// Verifies each `(chart, affine coordinates)` as an isolated singular
    /// point of `V(F)` and computes its local invariants.
    pub fn new(f: Polynomial, points: &[(usize, Vec<Rational>)]) -> Result<Self, GlobalError> {
        let d = homogeneous(&f)?;
        let nv = f.nvars();
        let verified = points
            .par_iter()
            .enumerate()
            .map(|(index, (chart, coords))| {
                if *chart >= nv {
                    return Err(GlobalError::ChartOutOfRange {
                        index,
                        chart: *chart,
                    });
                }
                if coords.len() != nv - 1 {
                    return Err(GlobalError::CoordinateCount {
                        index,
                        expected: nv - 1,
                        found: coords.len(),
                    });
                }
                let local = |e: LocalError| GlobalError::Point { index, source: e };
                let affine = f.dehomogenize(*chart)?;
                let germ = LocalGerm::at_point(&affine, coords).map_err(local)?;
                let mu = milnor_number(&germ).map_err(local)?;
                let tjurina =
                    tjurina_standard_basis(&germ, &germ.default_order()).map_err(local)?;
                let tau = tjurina.quotient_dim().expect("isolated");
                Ok(SingularPoint {
                    chart: *chart,
                    coords: coords.clone(),
                    germ,
                    mu,
                    tau,
                    tjurina,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        for i in 0..verified.len() {
            for j in 0..i {
                if same_point(&verified[i].projective(), &verified[j].projective()) {
                    return Err(GlobalError::DuplicatePoint {
                        first: j,
                        second: i,
                    });
                }
            }
        }
        Ok(Self {
            f,
            d,
            n: nv - 2,
            points: verified,
        })
    }

    pub fn tau_total(&self) -> usize {
        self.points.iter().map(|p| p.tau).sum()
    }

    /// `2d − n − 2`.
    pub fn residue_degree(&self) -> i64 {
        2 * i64::from(self.d) - self.n as i64 - 2
    }

    /// `(n+2)(d−2)+1`.
    pub fn stabilization_degree(&self) -> i64 {
        (self.n as i64 + 2) * (i64::from(self.d) - 2) + 1
    }
}

fn same_point(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| (i..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct PointsFileError {
    pub line: usize,
    pub message: String,
}

/// Parses a singular-points file: one point per line as
/// `chart=<i>; coords=<q1,…,q_{n+1}>`, `#` starting a comment.
pub fn parse_singular_points(text: &str) -> Result<Vec<(usize, Vec<Rational>)>, PointsFileError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| PointsFileError {
            line: k + 1,
            message,
        };
        let mut chart = None;
        let mut coords = None;
        for field in line.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {field:?}")))?;
            match key.trim() {
                "chart" => {
                    chart = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| err(format!("bad chart {value:?}")))?,
                    );
                }
                "coords" => {
                    let parsed = value
                        .split(',')
                        .map(|c| {
                            parse_rational(c.trim())
                                .ok_or_else(|| err(format!("bad coordinate {c:?}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    coords = Some(parsed);
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        match (chart, coords) {
            (Some(c), Some(q)) => out.push((c, q)),
            _ => return Err(err("both chart and coords are required".into())),
        }
    }
    Ok(out)
}

/// Inverse of [`parse_singular_points`].
pub fn format_singular_points(points: &[(usize, Vec<Rational>)]) -> String {
    points
        .iter()
        .map(|(c, q)| {
            format!(
                "chart={c}; coords={}\n",
                q.iter().map(format_rational).collect::<Vec<_>>().join(",")
            )
        })
        .collect()
}

/// Whether `dim R_{k*} = dim R_{k*+1} = Σ τ` with `k* = (n+2)(d−2)+1`.
pub fn completeness_check(h: &HypersurfaceRecord) -> Result<bool, GlobalError> {
    let (stable, next) = completeness_dims(h)?;
    Ok(stable == next && stable == h.tau_total())
}

/// `(dim R_{k*}, dim R_{k*+1})`.
pub fn completeness_dims(h: &HypersurfaceRecord) -> Result<(usize, usize), GlobalError> {
    let k = h.stabilization_degree();
    let dims = jacobian_ring_dims(&h.f, &[k, k + 1])?;
    Ok((dims[0], dims[1]))
}

/// Dimensions in the four-term sequence
/// `0 → H¹ → R_{2d−n−2} → ⊕ Tjurina algebras → H² → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDims {
    pub dim_r: usize,
    pub tau_total: usize,
    pub h1: usize,
    pub h2: usize,
    pub c_d: i64,
}

impl SequenceDims {
    /// `h1 − h2 = dim R − τ`.
    pub fn is_exact(&self) -> bool {
        self.h1 as i64 - self.h2 as i64 == self.dim_r as i64 - self.tau_total as i64
    }
}

/// Rank of the evaluation map `R_{2d−n−2} → ⊕_x O_x/(f, ∂f)`.
pub fn sequence_dims(h: &HypersurfaceRecord) -> Result<SequenceDims, GlobalError> {
    let h0 = h0_log(&h.f)?;
    if h0 != 0 {
        return Err(GlobalError::PrecondH0(h0));
    }
    let (stable, next) = completeness_dims(h)?;
    if stable != next || stable != h.tau_total() {
        return Err(GlobalError::IncompleteSingularList {
            stable,
            listed: h.tau_total(),
        });
    }
    let basis = jacobian_ring_basis(&h.f, h.residue_degree())?;
    let tau_total = h.tau_total();
    let rows = basis
        .par_iter()
        .map(|m| {
            let a = Polynomial::monomial(m.clone(), Rational::from_integer(1.into()));
            let mut row = Vec::with_capacity(tau_total);
            for (index, p) in h.points.iter().enumerate() {
                let local = |e: LocalError| GlobalError::Point { index, source: e };
                let moved = a.dehomogenize(p.chart)?.translate_to_origin(&p.coords)?;
                row.extend(p.tjurina.coordinates(&moved).map_err(local)?);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, GlobalError>>()?;
    let rk = if tau_total == 0 {
        0
    } else {
        rank(&RationalMatrix::from_rows(rows))
    };
    Ok(SequenceDims {
        dim_r: basis.len(),
        tau_total,
        h1: basis.len() - rk,
        h2: tau_total - rk,
        c_d: c_d(h.d, h.n),
    })
}

/// Both Euler characteristics: `Σ τ + c_d` and `Σ s_{n−1} + c_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub chi_barlet: i64,
    pub chi_dubois: i64,
    /// `Σ (τ − s_{n−1})`.
    pub difference: i64,
}

/// `s_list[i]` is `s_{n−1}` of the `i`-th singular point.
pub fn euler_characteristic_report(h: &HypersurfaceRecord, s_list: &[usize]) -> EulerReport {
    assert_eq!(
        s_list.len(),
        h.points.len(),
        "one s_(n-1) per singular point"
    );
    let c = c_d(h.d, h.n);
    let tau = h.tau_total() as i64;
    let s: i64 = s_list.iter().map(|&x| x as i64).sum();
    EulerReport {
        chi_barlet: tau + c,
        chi_dubois: s + c,
        difference: tau - s,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicontinuityReport {
    pub k: i64,
    /// `dim J(F)_k`.
    pub base: usize,
    /// `dim J(F + tG)_k` per sample.
    pub samples: Vec<usize>,
    /// `dim J(F+tG)_k ≥ dim J(F)_k` for all samples.
    pub inequality: bool,
    /// Whether equality is predicted (`k = 2d−n−2` and `h0_log(F) = 0`).
    pub equality_expected: bool,
    pub equality: bool,
}

impl SemicontinuityReport {
    pub fn holds(&self) -> bool {
        self.inequality && (!self.equality_expected || self.equality)
    }
}

pub fn semicontinuity_check(
    f: &Polynomial,
    g: &Polynomial,
    k: i64,
    samples: &[Rational],
) -> Result<SemicontinuityReport, GlobalError> {
    let d = homogeneous(f)?;
    if g.homogeneous_degree() != Some(d) {
        return Err(GlobalError::DegreeMismatch);
    }
    let n = f.nvars() as i64 - 2;
    let base = jacobian_ideal_dim(f, k)?;
    let dims = samples
        .par_iter()
        .map(|t| jacobian_ideal_dim(&(f + &g.scale(t)), k))
        .collect::<Result<Vec<_>, _>>()?;
    let equality_expected = k == 2 * i64::from(d) - n - 2 && h0_log(f)? == 0;
    Ok(SemicontinuityReport {
        k,
        base,
        inequality: dims.iter().all(|&x| x >= base),
        equality: dims.iter().all(|&x| x == base),
        samples: dims,
        equality_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{default_var_names, int, parse_polynomial};

    fn p(s: &str, nv: usize) -> Polynomial {
        parse_polynomial(s, &default_var_names(nv)).unwrap()
    }

    #[test]
    fn graded_dims() {
        assert_eq!(graded_dim_s(2, 3), 6);
        assert_eq!(graded_dim_s(-1, 3), 0);
        assert_eq!(graded_dim_s(4, 4), 35);
        assert_eq!(graded_dim_s(0, 4), 1);
    }

    #[test]
    fn series_and_constants() {
        assert_eq!(hilbert_series_smooth(3, 1), vec![1, 3, 3, 1]);
        assert_eq!(hilbert_series_smooth(4, 2)[4], 19);
        assert_eq!(hilbert_series_smooth(5, 2)[6], 44);
        assert_eq!(c_d(4, 2), 19);
        assert_eq!(c_d(3, 2), 6);
        assert_eq!(c_d(3, 1), 1);
    }

    #[test]
    fn fermat_quartic() {
        let f = p("x0^4+x1^4+x2^4+x3^4", 4);
        assert_eq!(jacobian_ring_dim(&f, 4).unwrap(), 19);
        assert_eq!(jacobian_ring_dim(&f, 9).unwrap(), 0);
        assert_eq!(h0_log(&f).unwrap(), 0);
        assert_eq!(jacobian_ring_basis(&f, 2).unwrap().len(), 10);
        let h = HypersurfaceRecord::new(f, &[]).unwrap();
        assert!(completeness_check(&h).unwrap());
        let s = sequence_dims(&h).unwrap();
        assert_eq!((s.dim_r, s.tau_total, s.h1, s.h2), (19, 0, 19, 0));
        assert_eq!(
            euler_characteristic_report(&h, &[]),
            EulerReport {
                chi_barlet: 19,
                chi_dubois: 19,
                difference: 0
            }
        );
    }

    #[test]
    fn smooth_cubic_curve() {
        assert_eq!(h0_log(&p("x0^3+x1^3+x2^3", 3)).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            jacobian_ring_dim(&p("x0^2+x1^3", 2), 2).unwrap_err(),
            GlobalError::NotHomogeneous
        );
        let f = p("x0^4+x1^4+x2^4+x3^4", 4);
        let err = HypersurfaceRecord::new(f, &[(0, vec![int(0), int(0), int(0)])]).unwrap_err();
        assert!(matches!(
            err,
            GlobalError::Point {
                index: 0,
                source: LocalError::NotOnHypersurface
            }
        ));
    }

    #[test]
    fn points_file() {
        let text = "# node\nchart=0; coords=0,1/2,-3\n\nchart=2;coords=1,1,1 # trailing\n";
        let pts = parse_singular_points(text).unwrap();
        assert_eq!(
            pts,
            vec![
                (0, vec![int(0), crate::poly::rat(1, 2), int(-3)]),
                (2, vec![int(1), int(1), int(1)])
            ]
        );
        assert_eq!(
            parse_singular_points(&format_singular_points(&pts)).unwrap(),
            pts
        );
        assert_eq!(parse_singular_points("chart=0\n").unwrap_err().line, 1);
        assert_eq!(
            parse_singular_points("\nchart=0; coords=x\n")
                .unwrap_err()
                .line,
            2
        );
        assert_eq!(
            parse_singular_points("chart=a; coords=1\n")
                .unwrap_err()
                .line,
            1
        );
    }

    #[test]
    fn chart_choice() {
        let (chart, coords) = affine_chart(&[int(0), int(2), int(4)]).unwrap();
        assert_eq!(chart, 1);
        assert_eq!(coords, vec![int(0), int(2)]);
    }
}
