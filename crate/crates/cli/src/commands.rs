//! Subcommand implementations. Each returns a report or a [`Failure`] that
//! carries the process exit code.

use std::collections::BTreeSet;
use std::path::Path;

use hodgering_core::criteria::{
    buchweitz_greuel_check, class_test, surface_classification, wahl_check, Catalog, CriteriaError,
    CurveBranchData, SpectralSource,
};
use hodgering_core::jacglobal::{
    completeness_check, euler_characteristic_report, h0_log, jacobian_ring_dims, sequence_dims,
    GlobalError, HypersurfaceRecord,
};
use hodgering_core::local::{
    milnor_number, tau_min_search, tjurina_number, LocalError, LocalGerm, TauMinSearch,
};
use hodgering_core::poly::{
    format_rational, parse_polynomial, parse_rational, Polynomial, Rational,
};
use hodgering_core::spectrum::{
    find_weights, hodge_numbers, induced_filtration, spectrum_with_weights, Spectrum,
    SpectrumError, WeightVector,
};

use crate::report::{
    qs, CatalogRow, CurveBlock, DegreeDim, FiltrationBlock, GlobalBlock, InputEcho, ReportDocument,
    Rung, SingularityBlock, SpectralEntry, TauMinBlock, Verdict, Q,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable or malformed input.
    Parse(String),
    NonIsolated(String),
    NotSingular(String),
    IncompleteSingularList(String),
    PrecondH0(String),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::NonIsolated(_) => 3,
            Failure::NotSingular(_) => 4,
            Failure::IncompleteSingularList(_) => 5,
            Failure::PrecondH0(_) => 6,
            Failure::Other(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m)
            | Failure::NonIsolated(m)
            | Failure::NotSingular(m)
            | Failure::IncompleteSingularList(m)
            | Failure::PrecondH0(m)
            | Failure::Other(m) => m,
        }
    }
}

impl From<LocalError> for Failure {
    fn from(e: LocalError) -> Self {
        let m = e.to_string();
        match e {
            LocalError::NonIsolated => Failure::NonIsolated(m),
            LocalError::NotSingular | LocalError::NotOnHypersurface => Failure::NotSingular(m),
            LocalError::Poly(_) => Failure::Parse(m),
            _ => Failure::Other(m),
        }
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Local(l) => l.into(),
            other => Failure::Parse(other.to_string()),
        }
    }
}

impl From<CriteriaError> for Failure {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::Local(l) => l.into(),
            CriteriaError::Spectrum(s) => s.into(),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<GlobalError> for Failure {
    fn from(e: GlobalError) -> Self {
        let m = e.to_string();
        match e {
            GlobalError::Point { source, .. } => match Failure::from(source) {
                Failure::NonIsolated(_) => Failure::NonIsolated(m),
                Failure::NotSingular(_) => Failure::NotSingular(m),
                _ => Failure::Other(m),
            },
            GlobalError::IncompleteSingularList { .. } => Failure::IncompleteSingularList(m),
            GlobalError::PrecondH0(_) => Failure::PrecondH0(m),
            _ => Failure::Parse(m),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Variables appearing in `text`: `x0, x1, …` up to the largest index if all
/// are of that form, otherwise `x, y, z, w` first and the rest alphabetically.
pub fn infer_variables(text: &str) -> Vec<String> {
    let mut names = BTreeSet::new();
    let mut current = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            current.push(ch);
        } else {
            if current
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            {
                names.insert(current.clone());
            }
            current.clear();
        }
    }
    let indexed: Option<Vec<usize>> = names
        .iter()
        .map(|n| n.strip_prefix('x').and_then(|i| i.parse().ok()))
        .collect();
    if let Some(ix) = indexed.filter(|ix| !ix.is_empty()) {
        let top = ix.into_iter().max().unwrap_or(0);
        return (0..=top).map(|i| format!("x{i}")).collect();
    }
    let rank = |n: &String| {
        ["x", "y", "z", "w"]
            .iter()
            .position(|v| v == n)
            .unwrap_or(4)
    };
    let mut v: Vec<String> = names.into_iter().collect();
    v.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
    v
}

pub fn parse_input(
    text: &str,
    vars: Option<Vec<String>>,
) -> Result<(Polynomial, Vec<String>), Failure> {
    let text = text.trim();
    let vars = vars.unwrap_or_else(|| infer_variables(text));
    if vars.is_empty() {
        return Err(Failure::Parse("the polynomial has no variables".into()));
    }
    let f =
        parse_polynomial(text, &vars).map_err(|e| Failure::Parse(format!("polynomial: {e}")))?;
    Ok((f, vars))
}

/// Comma-separated rationals.
pub fn parse_rationals(text: &str, what: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| {
            parse_rational(s)
                .ok_or_else(|| Failure::Parse(format!("{what}: bad rational {:?}", s.trim())))
        })
        .collect()
}

fn spectrum_entries(sp: &Spectrum) -> Vec<SpectralEntry> {
    sp.multiplicities()
        .iter()
        .map(|(b, &d)| SpectralEntry {
            value: Q(b.clone()),
            multiplicity: d,
        })
        .collect()
}

fn verdict(tau: usize, s: usize) -> Verdict {
    let defect = tau as i64 - s as i64;
    Verdict {
        tau,
        s_n_minus_1: s,
        defect,
        in_class: defect == 0,
    }
}

/// Local block for a germ at the origin. With `reference` weights a
/// non-quasi-homogeneous germ gets the spectrum of its principal part.
pub fn germ_block(
    g: &LocalGerm,
    point: Vec<Rational>,
    chart: Option<usize>,
    reference: Option<&WeightVector>,
) -> Result<SingularityBlock, Failure> {
    let mu = milnor_number(g)?;
    let tau = tjurina_number(g)?;
    let mut block = SingularityBlock {
        point: qs(point),
        chart,
        mu,
        tau,
        ..Default::default()
    };
    let own = find_weights(g.polynomial());
    let (weights, source) = match (&own, reference) {
        (Some(w), _) => (Some(w.clone()), SpectralSource::Auto),
        (None, Some(w)) => (Some(w.clone()), SpectralSource::Reference(w.clone())),
        (None, None) => (None, SpectralSource::Auto),
    };
    let (w, sp) = match (weights, &source) {
        (Some(w), SpectralSource::Reference(_)) => {
            let f0 = hodgering_core::criteria::principal_part(g.polynomial(), &w);
            let sp = spectrum_with_weights(&LocalGerm::new(f0)?, &w)?;
            (w, sp)
        }
        (Some(w), _) => {
            let sp = spectrum_with_weights(g, &w)?;
            (w, sp)
        }
        // A Morse point is a sum of squares in suitable coordinates.
        (None, _) if mu == 1 => {
            let squares = LocalGerm::new(sum_of_squares(g.polynomial().nvars()))?;
            let w = WeightVector::new(vec![
                Rational::new(1.into(), 2.into());
                squares.polynomial().nvars()
            ]);
            let sp = spectrum_with_weights(&squares, &w)?;
            (w, sp)
        }
        (None, _) => return Ok(block),
    };
    let h = hodge_numbers(&sp);
    let n = g.dimension();
    block.weights = Some(qs(w.as_slice().iter().cloned()));
    block.spectrum = Some(spectrum_entries(&sp));
    block.p_g = (n == 2).then(|| h.get(2));
    block.class_verdict = (n >= 1).then(|| verdict(tau, h.get(n - 1)));
    block.s_k = Some(h.0);
    Ok(block)
}

fn sum_of_squares(nvars: usize) -> Polynomial {
    (0..nvars)
        .map(|i| {
            let mut e = vec![0u32; nvars];
            e[i] = 2;
            Polynomial::monomial(e.into(), Rational::from_integer(1.into()))
        })
        .fold(Polynomial::zero(nvars), |acc, m| &acc + &m)
}

pub struct LocalOptions {
    pub point: Option<Vec<Rational>>,
    pub reference_weights: Option<Vec<Rational>>,
    pub tau_min: Option<TauMinSearch>,
    pub filtration: bool,
}

pub fn cmd_local(
    f: &Polynomial,
    vars: &[String],
    command: &str,
    opts: &LocalOptions,
) -> Result<ReportDocument, Failure> {
    let point = opts
        .point
        .clone()
        .unwrap_or_else(|| vec![Rational::from_integer(0.into()); f.nvars()]);
    if point.len() != f.nvars() {
        return Err(Failure::Parse(format!(
            "--point has {} coordinates, expected {}",
            point.len(),
            f.nvars()
        )));
    }
    let g = LocalGerm::at_point(f, &point)?;
    let reference = opts.reference_weights.clone().map(WeightVector::new);
    if let Some(w) = &reference {
        if w.len() != f.nvars() {
            return Err(Failure::Parse(format!(
                "--weights has {} entries, expected {}",
                w.len(),
                f.nvars()
            )));
        }
    }
    let mut doc = ReportDocument::new(
        command,
        InputEcho {
            polynomial: Some(f.to_string_with(vars)),
            variables: vars.to_vec(),
            d: f.homogeneous_degree(),
            n: Some(g.dimension()),
        },
    );
    let mut block = germ_block(&g, point, None, reference.as_ref())?;
    if let Some(cfg) = &opts.tau_min {
        let w = find_weights(g.polynomial())
            .or(reference.clone())
            .ok_or_else(|| {
                Failure::Parse("tau_min search needs a quasi-homogeneous germ or --weights".into())
            })?;
        let r = tau_min_search(&g, w.as_slice(), cfg)?;
        block.tau_min = Some(TauMinBlock {
            seed: cfg.seed,
            samples: r.sample_taus.len(),
            upper_monomials: r.upper_monomials.len(),
            tau_min: r.tau_min,
            mu_constant: r.mu_constant,
            witness: r.witness.to_string_with(vars),
        });
    }
    if opts.filtration {
        let fl = induced_filtration(&g)?;
        block.filtration = Some(FiltrationBlock {
            raw_generator: Q(fl.raw_generator),
            generator: fl.generator.map(Q),
            variables: fl
                .variables
                .into_iter()
                .map(|r| Rung {
                    monomial: r.monomial.as_slice().to_vec(),
                    raw: Q(r.raw),
                    induced: r.induced.map(Q),
                })
                .collect(),
            gaps: qs(fl.gaps),
        });
    }
    doc.singularities.push(block);
    Ok(doc)
}

pub fn cmd_hypersurface(
    f: &Polynomial,
    vars: &[String],
    points: &[(usize, Vec<Rational>)],
    degrees: &[i64],
) -> Result<ReportDocument, Failure> {
    let h = HypersurfaceRecord::new(f.clone(), points)?;
    let mut doc = ReportDocument::new(
        "hypersurface",
        InputEcho {
            polynomial: Some(f.to_string_with(vars)),
            variables: vars.to_vec(),
            d: Some(h.d),
            n: Some(h.n),
        },
    );
    for p in &h.points {
        doc.singularities
            .push(germ_block(&p.germ, p.projective(), Some(p.chart), None)?);
    }
    let s = sequence_dims(&h)?;
    let s_list: Option<Vec<usize>> = doc
        .singularities
        .iter()
        .map(|b| b.class_verdict.as_ref().map(|v| v.s_n_minus_1))
        .collect();
    let euler = euler_characteristic_report(
        &h,
        &s_list.clone().unwrap_or_else(|| vec![0; h.points.len()]),
    );
    let dims = jacobian_ring_dims(f, degrees)?;
    doc.global = Some(GlobalBlock {
        residue_degree: h.residue_degree(),
        dim_r: s.dim_r,
        c_d: s.c_d,
        h0_log: h0_log(f)?,
        tau_total: s.tau_total,
        h1: s.h1,
        h2: s.h2,
        exact: s.is_exact(),
        complete: completeness_check(&h)?,
        chi_barlet: euler.chi_barlet,
        chi_dubois: s_list.map(|_| euler.chi_dubois),
        hodge_graded: doc
            .singularities
            .iter()
            .all(|b| b.class_verdict.as_ref().is_some_and(|v| v.in_class)),
        degrees: degrees
            .iter()
            .zip(dims)
            .map(|(&k, dim_r)| DegreeDim { k, dim_r })
            .collect(),
    });
    Ok(doc)
}

pub fn cmd_criteria(catalog: &Catalog, names: &[String]) -> Result<ReportDocument, Failure> {
    for n in names {
        if catalog.get(n).is_none() {
            return Err(Failure::Parse(format!("no catalog entry named {n:?}")));
        }
    }
    let mut doc = ReportDocument::new("criteria", InputEcho::default());
    for e in catalog
        .entries
        .iter()
        .filter(|e| names.is_empty() || names.contains(&e.name))
    {
        let bad = |m: String| Failure::Parse(format!("{}: {m}", e.name));
        let g = e.germ().map_err(|x| bad(x.to_string()))?;
        let mu = milnor_number(&g)?;
        let tau = tjurina_number(&g)?;
        let mut row = CatalogRow {
            name: e.name.clone(),
            family: e.family.clone(),
            equation: e.equation.clone(),
            mu,
            tau,
            expected_mu: e.mu,
            expected_tau: e.tau,
            class_verdict: None,
            wahl_bound: None,
            classification: None,
            curve: None,
        };
        if let (2, Some(r)) = (g.nvars(), e.r) {
            let data = CurveBranchData::new(&g, r)?;
            let c = buchweitz_greuel_check(tau, mu, r, data.m)?;
            row.curve = Some(CurveBlock {
                r,
                m: data.m,
                delta: c.delta,
                bound: c.bound,
                holds: c.holds,
                curve_class_equality: c.curve_class_equality,
            });
        } else {
            let source = e.spectral_source().map_err(|x| bad(x.to_string()))?;
            row.class_verdict = match class_test(&g, &source) {
                Ok(v) => Some(Verdict {
                    tau: v.tau,
                    s_n_minus_1: v.s_n_minus_1,
                    defect: v.defect,
                    in_class: v.in_class,
                }),
                Err(CriteriaError::SpectrumUnavailable) => None,
                Err(other) => return Err(other.into()),
            };
            if let Some(data) = e.resolution() {
                row.wahl_bound = Some(wahl_check(mu, tau, &data).bound);
                row.classification = Some(surface_classification(mu, tau, &data));
            }
        }
        doc.catalog.push(row);
    }
    Ok(doc)
}

pub fn format_point(p: &[Rational]) -> String {
    p.iter().map(format_rational).collect::<Vec<_>>().join(",")
}
